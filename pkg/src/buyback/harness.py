"""Instance generators, seeded Monte Carlo estimation, and reporting.

All estimation is deterministic given (spec, seed, trials): instance
generation uses a PCG64 stream keyed by the generator seed, and simulation
trials use counter-split splitmix64 streams keyed by the run seed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, asdict
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .algorithms import is_r_structured, prefix_nets, run_gma
from .matroids import (GraphicMatroid, Instance, PartitionMatroid,
                       UniformMatroid, max_weight_basis)
from .ratios import optimal_r, ratio_formula

REPORT_COLUMNS = ["algorithm", "instance", "f", "trials", "mean", "stderr",
                  "opt", "ratio", "bound", "seed"]


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic instance recipe.

    kinds:
      geometric        -- single-item stream 1, base, base^2, ... (length terms)
      r_structured     -- values are random powers of r on a uniform matroid
      random_matroid   -- random oracle of the given matroid kind with values
                          drawn uniformly from (0, 1]
    """

    kind: str
    params: tuple
    seed: int = 0

    @classmethod
    def geometric(cls, base: float, length: int) -> "GeneratorSpec":
        return cls("geometric", (("base", float(base)), ("length", int(length))))

    @classmethod
    def r_structured(cls, r: float, rank: int, n: int, max_power: int = 6,
                     seed: int = 0) -> "GeneratorSpec":
        return cls("r_structured", (("r", float(r)), ("rank", int(rank)),
                                    ("n", int(n)), ("max_power", int(max_power))),
                   seed=seed)

    @classmethod
    def random_matroid(cls, matroid_kind: str, n: int, seed: int = 0) -> "GeneratorSpec":
        return cls("random_matroid", (("matroid_kind", matroid_kind),
                                      ("n", int(n))), seed=seed)

    @classmethod
    def from_dict(cls, doc: dict) -> "GeneratorSpec":
        doc = dict(doc)
        kind = doc.pop("kind", None)
        seed = int(doc.pop("seed", 0))
        if kind == "geometric":
            return cls.geometric(doc["base"], doc["length"])
        if kind == "r_structured":
            return cls.r_structured(doc["r"], doc["rank"], doc["n"],
                                    doc.get("max_power", 6), seed)
        if kind == "random_matroid":
            return cls.random_matroid(doc["matroid_kind"], doc["n"], seed)
        raise ValueError(f"unknown generator kind: {kind!r}")

    def describe(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}({inner},seed={self.seed})"


def generate(spec: GeneratorSpec) -> Instance:
    """Materialize an instance; a pure function of (spec, seed)."""
    params = dict(spec.params)
    if spec.kind == "geometric":
        base, length = params["base"], params["length"]
        if base <= 1.0 or length < 1:
            raise ValueError("geometric generator needs base > 1, length >= 1")
        values = [base ** i for i in range(length)]
        return Instance(values, UniformMatroid(rank=1, n=length))
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.kind == "r_structured":
        r, rank, n = params["r"], params["rank"], params["n"]
        max_power = params["max_power"]
        if r <= 1.0 or rank < 1 or n < 1:
            raise ValueError("r_structured generator needs r > 1, rank, n >= 1")
        powers = rng.integers(0, max_power + 1, size=n)
        values = [float(r) ** int(p) for p in powers]
        return Instance(values, UniformMatroid(rank=rank, n=n))
    if spec.kind == "random_matroid":
        kind, n = params["matroid_kind"], params["n"]
        values = 1.0 - rng.random(n)   # uniform on (0, 1]
        if kind == "uniform":
            oracle = UniformMatroid(rank=int(rng.integers(1, n + 1)), n=n)
        elif kind == "partition":
            nparts = int(rng.integers(1, max(2, n // 2 + 1)))
            parts = [int(p) for p in rng.integers(0, nparts, size=n)]
            caps = [int(c) for c in rng.integers(1, 4, size=nparts)]
            oracle = PartitionMatroid(parts, caps)
        elif kind == "graphic":
            nv = max(3, n // 2 + 1)
            edges = []
            for _ in range(n):
                a = int(rng.integers(0, nv))
                b = int(rng.integers(0, nv - 1))
                if b >= a:
                    b += 1   # no self loops
                edges.append((a, b))
            oracle = GraphicMatroid(edges)
        else:
            raise ValueError(f"unknown matroid kind: {kind!r}")
        return Instance([float(v) for v in values], oracle)
    raise ValueError(f"unknown generator kind: {spec.kind!r}")


@dataclass(frozen=True)
class RatioReport:
    algorithm: str
    instance: str
    f: float
    trials: int
    mean: float
    stderr: float
    opt: float
    ratio: float
    bound: float
    seed: int

    def row(self) -> dict:
        return asdict(self)


def _mean_stderr(total: float, total_sq: float, trials: int) -> Tuple[float, float]:
    mean = total / trials
    if trials < 2:
        return mean, 0.0
    var = max(0.0, (total_sq - total * mean) / (trials - 1))
    return mean, math.sqrt(var / trials)


def estimate_expected_payoff(algorithm: str, instance: Instance, f: float,
                             trials: int, seed: int,
                             r: Optional[float] = None,
                             instance_id: str = "instance") -> RatioReport:
    """Monte Carlo payoff estimate with OPT, empirical ratio, and the
    applicable theoretical bound.

    "gma" is deterministic: one run, zero standard error.  "randalg" runs
    ``trials`` counter-seeded trials through the simulation kernel.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    _, opt = max_weight_basis(instance)
    if algorithm == "gma":
        nets = prefix_nets(run_gma(instance, f), instance.values, f)
        mean, stderr = nets[-1] if nets else 0.0, 0.0
        bound = float("nan")
    elif algorithm == "randalg":
        if r is None:
            r = optimal_r(f)
        sums, sumsqs = kernels.randalg_prefix_stats(instance, f, r, trials, seed)
        mean, stderr = _mean_stderr(float(sums[-1]), float(sumsqs[-1]), trials)
        bound = ratio_formula(r, f)
    else:
        raise ValueError(f"unknown algorithm: {algorithm!r}")
    ratio = opt / mean if mean > 0 else float("inf")
    return RatioReport(algorithm=algorithm, instance=instance_id, f=f,
                       trials=trials, mean=mean, stderr=stderr, opt=opt,
                       ratio=ratio, bound=bound, seed=seed)


def prefix_profile(algorithm: str, instance: Instance, f: float, trials: int,
                   seed: int, r: Optional[float] = None):
    """Per-prefix arrays (opt, mean, stderr, ratio) for every prefix length.

    The adversary may stop the stream anywhere, so every prefix is a
    complete adversarial input; the randomized run resamples its phase every
    trial, making each prefix column an independent Monte Carlo mean.
    """
    n = instance.n
    opts = np.empty(n)
    for p in range(1, n + 1):
        _, opts[p - 1] = max_weight_basis(instance.prefix(p))
    if algorithm == "gma":
        nets = prefix_nets(run_gma(instance, f), instance.values, f)
        means = np.asarray(nets)
        stderrs = np.zeros(n)
    elif algorithm == "randalg":
        if r is None:
            r = optimal_r(f)
        sums, sumsqs = kernels.randalg_prefix_stats(instance, f, r, trials, seed)
        means = np.empty(n)
        stderrs = np.empty(n)
        for p in range(n):
            means[p], stderrs[p] = _mean_stderr(float(sums[p]),
                                                float(sumsqs[p]), trials)
    else:
        raise ValueError(f"unknown algorithm: {algorithm!r}")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(means > 0, opts / means, np.inf)
    return opts, means, stderrs, ratios


def worst_prefix_ratio(algorithm: str, instance: Instance, f: float,
                       trials: int, seed: int,
                       r: Optional[float] = None) -> Tuple[int, float]:
    """Adversarial stopping point: (prefix length, OPT(prefix)/E[net])
    maximized over all prefixes."""
    _, _, _, ratios = prefix_profile(algorithm, instance, f, trials, seed, r)
    p = int(np.argmax(ratios))
    return p + 1, float(ratios[p])


def write_reports_csv(path: str, reports: Sequence[RatioReport]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS)
        writer.writeheader()
        for rep in reports:
            writer.writerow({k: _fmt(v) for k, v in rep.row().items()})


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v
