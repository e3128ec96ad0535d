"""Online buyback algorithms: greedy (GMA), random filtering, and the
rounded randomized algorithm, with exact payoff accounting.

A :class:`Trace` is the full event log of one run; payoffs are always
derived from traces so that every algorithm shares one ledger definition:
net = val(R) - f * val(B).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

from .matroids import Instance, MatroidOracle, find_swap_candidate

SELL = "sell"
SWAP = "swap"
REJECT = "reject"


@dataclass(frozen=True)
class TraceEvent:
    index: int
    decision: str          # "sell" | "swap" | "reject"
    buyback: Optional[int] = None

    def to_json(self) -> str:
        return json.dumps({"i": self.index, "decision": self.decision,
                           "buyback": self.buyback})


@dataclass
class Trace:
    """Arrival-ordered event log; one event per element."""

    events: List[TraceEvent]

    def held_sets(self):
        """Yield the held set S^k after each event (step-validation hook)."""
        held = set()
        for ev in self.events:
            if ev.buyback is not None:
                held.discard(ev.buyback)
            if ev.decision in (SELL, SWAP):
                held.add(ev.index)
            yield set(held)

    @property
    def final_set(self):
        held = set()
        for held in self.held_sets():
            pass
        return held

    @property
    def buyback_set(self):
        return {ev.buyback for ev in self.events if ev.buyback is not None}

    def write_jsonl(self, path: str) -> None:
        with open(path, "w") as fh:
            for ev in self.events:
                fh.write(ev.to_json() + "\n")


@dataclass(frozen=True)
class PayoffLedger:
    gross: float
    penalty: float
    net: float
    f: float


def payoff(trace: Trace, values: Sequence[float], f: float) -> PayoffLedger:
    """Exact ledger for a trace: gross = val(R), penalty = f*val(B)."""
    gross = math.fsum(values[i] for i in trace.final_set)
    penalty = f * math.fsum(values[j] for j in trace.buyback_set)
    return PayoffLedger(gross=gross, penalty=penalty, net=gross - penalty, f=f)


def prefix_nets(trace: Trace, values: Sequence[float], f: float) -> List[float]:
    """Running net payoff after each arrival.

    Same update order as the compiled kernel: credit the sale first, then
    charge the buyback at (1+f) times the revoked value.
    """
    one_plus_f = 1.0 + f
    cur = 0.0
    out = []
    for ev in trace.events:
        if ev.decision in (SELL, SWAP):
            cur = cur + values[ev.index]
        if ev.buyback is not None:
            cur = cur - one_plus_f * values[ev.buyback]
        out.append(cur)
    return out


def run_gma(instance: Instance, f: float) -> Trace:
    """Greedy matroid algorithm.

    Sell whenever the held set stays independent; otherwise find the
    cheapest feasible swap j and take it only if v_j < v_i strictly.
    The decision rule does not depend on f; the argument is kept so all
    algorithms share one call signature.
    """
    if f < 0:
        raise ValueError("buyback factor f must be nonnegative")
    oracle = instance.oracle
    values = instance.values
    held = set()
    events = []
    for i in range(instance.n):
        if oracle.is_independent(held | {i}):
            held.add(i)
            events.append(TraceEvent(i, SELL))
            continue
        j = find_swap_candidate(oracle, held, i, values)
        if j is not None and values[j] < values[i]:
            held.remove(j)
            held.add(i)
            events.append(TraceEvent(i, SWAP, buyback=j))
        else:
            events.append(TraceEvent(i, REJECT))
    return Trace(events)


@dataclass(frozen=True)
class FilteredInstance:
    """Shared oracle and arrival order with base values v and filtered w <= v."""

    values: tuple
    filtered: tuple
    oracle: MatroidOracle

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "filtered", tuple(float(w) for w in self.filtered))
        if len(self.values) != len(self.filtered):
            raise ValueError("values and filtered values must align")
        for v, w in zip(self.values, self.filtered):
            if w > v:
                raise ValueError(f"filtered value {w} exceeds base value {v}")
            if not (w > 0.0):
                raise ValueError("filtered values must be strictly positive")
        if self.oracle.ground_size != len(self.values):
            raise ValueError("oracle ground set size must equal number of values")

    @property
    def n(self) -> int:
        return len(self.values)

    def inner_instance(self) -> Instance:
        return Instance(self.filtered, self.oracle)


def run_filter(algorithm: Callable[[Instance, float], Trace],
               filtered: FilteredInstance, f: float, rng) -> Trace:
    """Random filtering reduction around an inner online algorithm.

    One uniform draw per arrival decides x_i (accept with probability
    w_i / v_i); the outer run sells to i only when the inner run sells and
    x_i = 1, and buys back j only when the inner run buys back j and x_j = 1.
    The inner algorithm sees only the filtered values.
    """
    inner = algorithm(filtered.inner_instance(), f)
    x = []
    events = []
    for i, ev in enumerate(inner.events):
        assert ev.index == i
        x.append(rng.random() < filtered.filtered[i] / filtered.values[i])
        sold = ev.decision in (SELL, SWAP) and x[i]
        bought = ev.buyback if (ev.buyback is not None and x[ev.buyback]) else None
        if sold:
            events.append(TraceEvent(i, SWAP if bought is not None else SELL,
                                     buyback=bought))
        else:
            events.append(TraceEvent(i, REJECT, buyback=bought))
    return Trace(events)


@dataclass(frozen=True)
class RoundingParams:
    """Rounding base r > 1+f and phase u in [0, 1]."""

    r: float
    u: float

    def __post_init__(self):
        if not (self.r > 1.0):
            raise ValueError("rounding base r must exceed 1")
        if not (0.0 <= self.u <= 1.0):
            raise ValueError("phase u must lie in [0, 1]")


def round_value(v: float, params: RoundingParams) -> float:
    """Round v down to r**(u + floor(log_r(v) - u)).

    Output never exceeds v and is monotone in v for fixed (r, u); for a
    common phase u, outputs are pairwise r-structured.
    """
    if not (v > 0.0):
        raise ValueError("round_value requires v > 0")
    r, u = params.r, params.u
    z = u + math.floor(math.log(v) / math.log(r) - u)
    # min() guards the w <= v contract against last-ulp pow/log rounding
    return min(r ** z, v)


def run_randalg(instance: Instance, f: float, r: Optional[float] = None,
                rng=None) -> Trace:
    """Rounding + filtering composition: one global phase u, filtered GMA.

    Draw order is fixed (u first, then one uniform per arrival) so runs are
    reproducible bit-for-bit from the rng stream.
    """
    if f < 0:
        raise ValueError("buyback factor f must be nonnegative")
    if rng is None:
        raise ValueError("run_randalg requires an explicit rng stream")
    if r is None:
        from .ratios import optimal_r
        r = optimal_r(f)
    if not (r > 1.0 + f):
        raise ValueError(f"rounding base r={r} must exceed 1 + f = {1.0 + f}")
    u = rng.random()
    params = RoundingParams(r=r, u=u)
    w = tuple(round_value(v, params) for v in instance.values)
    filt = FilteredInstance(values=instance.values, filtered=w,
                            oracle=instance.oracle)
    return run_filter(run_gma, filt, f, rng)


def is_r_structured(values: Sequence[float], r: float, tol: float = 1e-9) -> bool:
    """True iff every pairwise value ratio is an integer power of r."""
    if not values:
        return True
    logr = math.log(r)
    base = math.log(values[0]) / logr
    for v in values:
        l = math.log(v) / logr - base
        if abs(l - round(l)) > tol:
            return False
    return True
