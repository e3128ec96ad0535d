"""Continuous-time single-item lab for the lower-bound construction.

The adversary stops a clock at a random time x drawn from the density 1/x^2
on [1, y) with a point mass 1/y at y; a deterministic strategy is a finite
increasing set of mark times.  This module evaluates mark strategies in
closed form, samples the stopping law, searches for optimal strategies, and
bridges back to discrete bid streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .ratios import competitive_ratio
from .search import golden_section_max


@dataclass(frozen=True)
class StopDistribution:
    """Stopping-time law: density 1/x^2 on [1, y), point mass 1/y at y."""

    y: float

    def __post_init__(self):
        if not (self.y > 1.0):
            raise ValueError("horizon y must exceed 1")

    def survival(self, x: float) -> float:
        """G(x) = P(stop time >= x): 1/x on [1, y], 0 beyond."""
        if x <= 1.0:
            return 1.0
        if x <= self.y:
            return 1.0 / x
        return 0.0


@dataclass(frozen=True)
class MarkStrategy:
    """Strictly increasing mark times in [1, y]."""

    marks: tuple

    def __post_init__(self):
        marks = tuple(float(u) for u in self.marks)
        object.__setattr__(self, "marks", marks)
        if not marks:
            raise ValueError("strategy needs at least one mark")
        if any(b <= a for a, b in zip(marks, marks[1:])):
            raise ValueError("marks must be strictly increasing")

    @property
    def k(self) -> int:
        return len(self.marks)


@dataclass(frozen=True)
class GeometricStrategy:
    """Marks at 1, w, w^2, ..., w^(k-1)."""

    w: float
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("mark count k must be at least 1")
        if self.k > 1 and not (self.w > 1.0):
            raise ValueError("ratio w must exceed 1")

    def marks(self) -> MarkStrategy:
        return MarkStrategy(tuple(self.w ** i for i in range(self.k)))


def expected_payoff(strategy: MarkStrategy, f: float,
                    dist: StopDistribution) -> float:
    """Closed-form expectation: sum_i (u_i - (1+f) u_{i-1}) G(u_i), u_0 = 0."""
    us = strategy.marks
    if us[0] < 1.0 or us[-1] > dist.y:
        raise ValueError("marks must lie within [1, y]")
    total = 0.0
    prev = 0.0
    for u in us:
        total += (u - (1.0 + f) * prev) * dist.survival(u)
        prev = u
    return total


def geometric_payoff(w: float, k: int, f: float) -> float:
    """Payoff 1 + (k-1)(w - 1 - f)/w of the geometric strategy (marks <= y)."""
    if k == 1:
        return 1.0
    return 1.0 + (k - 1) * (w - 1.0 - f) / w


def prophet_value(dist: StopDistribution) -> float:
    """Expected stopping time: 1 + ln(y)."""
    return 1.0 + math.log(dist.y)


def sample_stop_time(dist: StopDistribution, rng) -> float:
    """Inverse-CDF draw: min(1/(1-q), y) for q uniform in [0, 1)."""
    q = rng.random()
    return min(1.0 / (1.0 - q), dist.y)


def realized_payoff(strategy: MarkStrategy, f: float, x: float) -> float:
    """Payoff for a realized stop time x: last mark <= x minus f times the
    sum of earlier marks (0 if the clock stops before the first mark)."""
    if x < 1.0:
        raise ValueError("stop times start at 1")
    last = None
    paid = 0.0
    for u in strategy.marks:
        if u > x:
            break
        if last is not None:
            paid += last
        last = u
    if last is None:
        return 0.0
    return last - f * paid


def best_geometric(f: float, y: float, k_max: int,
                   grid_points: int = 64) -> Tuple[GeometricStrategy, float, float]:
    """Best geometric strategy for horizon y: maximize the closed-form payoff
    over k <= k_max, scanning the boundary ratio y^(1/(k-1)) plus a log-grid
    of interior ratios, and return (strategy, payoff, induced ratio bound).

    The bound is (1 + ln y) / payoff: no deterministic strategy in the family
    beats the returned payoff, so every algorithm's ratio is at least this.
    """
    if not (y > 1.0):
        raise ValueError("horizon y must exceed 1")
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    best: Tuple[GeometricStrategy, float] = (GeometricStrategy(w=y, k=1), 1.0)
    for k in range(2, k_max + 1):
        w_boundary = y ** (1.0 / (k - 1))
        if w_boundary <= 1.0:
            continue
        candidates = [w_boundary]
        lw = math.log(w_boundary)
        candidates.extend(math.exp(lw * (j + 1) / (grid_points + 1))
                          for j in range(grid_points))
        for w in candidates:
            p = geometric_payoff(w, k, f)
            if p > best[1]:
                best = (GeometricStrategy(w=w, k=k), p)
    strategy, p = best
    bound = (1.0 + math.log(y)) / p
    return strategy, p, bound


def brute_force_optimal_marks(f: float, y: float, k: int,
                              tol: float = 1e-8) -> MarkStrategy:
    """Optimal k-mark strategy (k <= 3) by nested golden-section search.

    Each coordinate profile of the expectation is unimodal given the outer
    marks, so nesting 1-D searches over 1 <= u_1 <= ... <= u_k <= y is exact
    up to the coordinate tolerance.
    """
    if not (1 <= k <= 3):
        raise ValueError("brute force supports k in {1, 2, 3}")
    if k == 1:
        # u * G(u) = 1 everywhere on [1, y]; ties break to the earliest mark
        return MarkStrategy((1.0,))
    dist = StopDistribution(y)

    def value(us: List[float]) -> float:
        total = 0.0
        prev = 0.0
        for u in us:
            total += (u - (1.0 + f) * prev) * dist.survival(u)
            prev = u
        return total

    def solve(prefix: List[float], depth: int) -> Tuple[float, List[float]]:
        lo = prefix[-1] if prefix else 1.0
        if depth == k - 1:
            u, _ = golden_section_max(lambda t: value(prefix + [t]), lo, y, tol)
            return value(prefix + [u]), prefix + [u]

        def inner(t: float) -> float:
            return solve(prefix + [t], depth + 1)[0]

        u, _ = golden_section_max(inner, lo, y, tol)
        return solve(prefix + [u], depth + 1)

    _, marks = solve([], 0)
    # strictness can collapse at the tolerance scale; nudge degenerate ties
    fixed = []
    for u in marks:
        if fixed and u <= fixed[-1]:
            u = fixed[-1] * (1.0 + 1e-9)
        fixed.append(u)
    return MarkStrategy(tuple(fixed))


def discretize_to_bids(delta: float, y: float) -> List[float]:
    """Geometric bid stream 1, (1+delta), (1+delta)^2, ... up to the first
    value >= y; the continuous-to-discrete bridge input."""
    if not (delta > 0.0):
        raise ValueError("delta must be positive")
    if not (y > 1.0):
        raise ValueError("horizon y must exceed 1")
    out = [1.0]
    while out[-1] < y:
        out.append(out[-1] * (1.0 + delta))
    return out


def lowerbound_row(f: float, y: float, k_max: int) -> dict:
    """One sweep row: best geometric strategy and its gap to c(f)."""
    strategy, p, bound = best_geometric(f, y, k_max)
    c_star = competitive_ratio(f)
    return {
        "y": y,
        "k": strategy.k,
        "w": strategy.w,
        "P": p,
        "V": prophet_value(StopDistribution(y)),
        "bound_c": bound,
        "c_star_gap": c_star - bound,
    }
