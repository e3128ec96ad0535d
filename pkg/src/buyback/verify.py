"""Self-verification suites for the core guarantees.

Each suite returns (name, passed, failed, messages); ``run_all`` drives them
and is what the CLI's ``verify`` subcommand prints.  The checks mirror the
analytical guarantees: the greedy bound on power-structured inputs, the exact
filtering expectation identity, the rounding distribution, and the structure
of optimal mark strategies in the continuous game.
"""

from __future__ import annotations

import math
from itertools import combinations, product
from typing import Callable, List, Tuple

import numpy as np

from .algorithms import (FilteredInstance, Trace, is_r_structured, payoff,
                         run_filter, run_gma, run_randalg, RoundingParams,
                         round_value)
from .lowerbound import brute_force_optimal_marks
from .matroids import (ExplicitMatroid, Instance, MatroidOracle,
                       max_weight_basis, validate_matroid_axioms)
from .harness import GeneratorSpec, generate
from .rng import SplitMix64

SuiteResult = Tuple[str, int, int, List[str]]


class _ForcedBits:
    """Drives run_filter down a chosen acceptance path: draw 0.0 forces
    x = 1, draw 1.0 forces x = 0 (for probabilities in (0, 1])."""

    def __init__(self, bits):
        self._draws = [0.0 if b else 1.0 for b in bits]
        self._pos = 0

    def random(self) -> float:
        d = self._draws[self._pos]
        self._pos += 1
        return d


def filter_expected_net_exact(filtered: FilteredInstance, f: float) -> float:
    """Exact expectation of the filtered net payoff on the base values,
    by probability-weighted enumeration of every acceptance bit-vector."""
    n = filtered.n
    if n > 16:
        raise ValueError("exact enumeration limited to n <= 16")
    probs = [w / v for w, v in zip(filtered.filtered, filtered.values)]
    total = 0.0
    for bits in product((0, 1), repeat=n):
        weight = 1.0
        for b, p in zip(bits, probs):
            weight *= p if b else 1.0 - p
        if weight == 0.0:
            continue
        trace = run_filter(run_gma, filtered, f, _ForcedBits(bits))
        total += weight * payoff(trace, filtered.values, f).net
    return total


def validate_trace(trace: Trace, oracle: MatroidOracle) -> None:
    """Step-validating wrapper: held set stays independent, evolves only by
    the allowed moves, and the ledger sets partition correctly."""
    prev = set()
    ever_held = set()
    for ev, held in zip(trace.events, trace.held_sets()):
        if not held <= prev | {ev.index}:
            raise AssertionError(f"held set grew illegally at {ev.index}")
        if not oracle.is_independent(held):
            raise AssertionError(f"held set dependent after {ev.index}")
        ever_held |= held
        prev = held
    final = trace.final_set
    buybacks = trace.buyback_set
    if buybacks != ever_held - final:
        raise AssertionError("buyback set is not (union of held sets) - final")
    if final & buybacks:
        raise AssertionError("final and buyback sets overlap")


def _random_instances(count: int, seed: int, max_n: int = 10):
    for k in range(count):
        kind = ("uniform", "partition", "graphic")[k % 3]
        spec = GeneratorSpec.random_matroid(kind, n=4 + (k % (max_n - 3)),
                                            seed=seed + k)
        yield generate(spec)


def suite_matroid(seed: int = 11) -> SuiteResult:
    passed = failed = 0
    messages = []
    rng = np.random.Generator(np.random.PCG64(seed))
    for inst in _random_instances(12, seed, max_n=8):
        n = inst.n
        explicit = ExplicitMatroid(n, [s for k in range(n + 1)
                                       for s in combinations(range(n), k)
                                       if inst.oracle.is_independent(s)])
        try:
            validate_matroid_axioms(explicit)
            passed += 1
        except ValueError as exc:
            failed += 1
            messages.append(f"axioms: {exc}")
        # greedy optimum vs brute force over the explicit family
        for _ in range(4):
            weights = [float(v) for v in 1.0 - rng.random(n)]
            wi = Instance(weights, explicit)
            _, greedy_val = max_weight_basis(wi)
            brute = max(math.fsum(weights[i] for i in s)
                        for s in explicit.independent_sets)
            if abs(greedy_val - brute) <= 1e-12 * max(1.0, brute):
                passed += 1
            else:
                failed += 1
                messages.append(f"basis: greedy {greedy_val} != brute {brute}")
    return "matroid-oracles", passed, failed, messages


def suite_trace_invariants(seed: int = 23) -> SuiteResult:
    passed = failed = 0
    messages = []
    for k, inst in enumerate(_random_instances(12, seed)):
        f = (0.0, 0.5, 1.0, 2.0)[k % 4]
        traces = [run_gma(inst, f),
                  run_randalg(inst, f, r=2.0 + f + k % 3,
                              rng=SplitMix64(seed + k))]
        for trace in traces:
            try:
                validate_trace(trace, inst.oracle)
                passed += 1
            except AssertionError as exc:
                failed += 1
                messages.append(f"trace: {exc}")
    return "trace-invariants", passed, failed, messages


def check_gma_bound(runner: Callable[[Instance, float], Trace],
                    instances, r: float, f: float):
    """Greedy guarantee on power-structured inputs: net payoff at least
    (1 - f/(r-1)) of the offline optimum and buyback value at most
    val(final)/(r-1).  Returns a list of violation messages."""
    violations = []
    for idx, inst in enumerate(instances):
        if not is_r_structured(inst.values, r):
            violations.append(f"instance {idx} is not r-structured")
            continue
        trace = runner(inst, f)
        led = payoff(trace, inst.values, f)
        _, opt = max_weight_basis(inst)
        floor_net = (1.0 - f / (r - 1.0)) * opt
        if led.net < floor_net - 1e-9 * max(1.0, abs(floor_net)):
            violations.append(f"instance {idx}: net {led.net} < {floor_net}")
        buyback_val = math.fsum(inst.values[j] for j in trace.buyback_set)
        cap = led.gross / (r - 1.0)
        if buyback_val > cap + 1e-9 * max(1.0, cap):
            violations.append(f"instance {idx}: buyback {buyback_val} > {cap}")
    return violations


def structured_instances(count: int, r: float, seed: int, max_rank: int = 10):
    """Random power-structured instances, including tied values."""
    out = []
    for k in range(count):
        spec = GeneratorSpec.r_structured(r=r, rank=1 + k % max_rank,
                                          n=6 + k % 20, seed=seed + k)
        out.append(generate(spec))
    return out


def suite_gma_bound(count: int = 40, seed: int = 37) -> SuiteResult:
    r, f = 4.0, 1.0
    violations = check_gma_bound(run_gma, structured_instances(count, r, seed),
                                 r, f)
    return "greedy-bound", count - len(violations), len(violations), violations


def suite_filter_expectation(count: int = 20, seed: int = 51,
                             tol: float = 1e-9) -> SuiteResult:
    """Filtered expectation on v equals the inner payoff on w, exactly."""
    passed = failed = 0
    messages = []
    rng = np.random.Generator(np.random.PCG64(seed))
    for inst in _random_instances(count, seed, max_n=9):
        v = inst.values
        w = tuple(val * (0.25 + 0.75 * rng.random()) for val in v)
        filt = FilteredInstance(values=v, filtered=w, oracle=inst.oracle)
        expected = filter_expected_net_exact(filt, f=1.0)
        inner_net = payoff(run_gma(filt.inner_instance(), 1.0), w, 1.0).net
        if abs(expected - inner_net) <= tol * max(1.0, abs(inner_net)):
            passed += 1
        else:
            failed += 1
            messages.append(f"filter: {expected} != {inner_net}")
    return "filter-expectation", passed, failed, messages


def suite_rounding_distribution(samples: int = 100_000, seed: int = 67) -> SuiteResult:
    """Empirical mean of w/v against (r-1)/(r ln r), within 4 standard errors."""
    passed = failed = 0
    messages = []
    rng = np.random.Generator(np.random.PCG64(seed))
    for r in (1.5, 2.0, math.e, 5.0):
        v = 7.3
        us = rng.random(samples)
        ws = np.array([round_value(v, RoundingParams(r=r, u=u))
                       for u in us[:2000]])
        # vectorized twin for volume; checked pointwise against round_value
        zs = us + np.floor(np.log(v) / np.log(r) - us)
        ws_vec = np.minimum(r ** zs, v)
        if not np.array_equal(ws, ws_vec[:2000]):
            failed += 1
            messages.append(f"rounding twin mismatch at r={r}")
            continue
        ratio = ws_vec / v
        target = (r - 1.0) / (r * math.log(r))
        se = ratio.std(ddof=1) / math.sqrt(samples)
        if abs(ratio.mean() - target) <= 4.0 * se:
            passed += 1
        else:
            failed += 1
            messages.append(f"rounding mean off at r={r}: "
                            f"{ratio.mean()} vs {target} (se {se})")
    return "rounding-distribution", passed, failed, messages


def suite_mark_structure() -> SuiteResult:
    """Optimal mark strategies start at 1 and are geometric (k <= 3)."""
    passed = failed = 0
    messages = []
    for f, y in ((0.5, math.exp(4)), (1.0, math.exp(6))):
        for k in (1, 2, 3):
            marks = brute_force_optimal_marks(f, y, k).marks
            ok = abs(marks[0] - 1.0) <= 1e-3
            if ok and k == 3:
                lhs, rhs = marks[1] ** 2, marks[0] * marks[2]
                ok = abs(lhs - rhs) <= 1e-4 * max(lhs, rhs)
            if ok:
                passed += 1
            else:
                failed += 1
                messages.append(f"marks f={f} y={y:.1f} k={k}: {marks}")
    return "mark-structure", passed, failed, messages


ALL_SUITES = (suite_matroid, suite_trace_invariants, suite_gma_bound,
              suite_filter_expectation, suite_rounding_distribution,
              suite_mark_structure)


def run_all() -> List[SuiteResult]:
    return [suite() for suite in ALL_SUITES]
