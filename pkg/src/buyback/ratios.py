"""Competitive-ratio formulas and the lower-branch Lambert W core.

Everything here is a pure function of the buyback factor f and the rounding
base r.  The optimal ratio is c(f) = -W(-1/(e(1+f))) on the branch W <= -1,
attained at rounding base r* = (1+f) * c(f); at f = 0 the minimizing base
degenerates to the open-interval infimum r = 1 and the ratio is exactly 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_INV_E = 1.0 / math.e
_MAX_HALLEY = 50


def lambert_w_lower(z: float) -> float:
    """Lower branch of Lambert's W on [-1/e, 0): the solution w <= -1 of
    w * exp(w) = z.

    Halley iteration seeded from a branch-point series (near z = -1/e) or
    the asymptotic log(-z) - log(-log(-z)) (near 0), with a bisection
    fallback if the iteration fails to settle.
    """
    if z == -_INV_E:
        return -1.0
    if not (-_INV_E < z < 0.0):
        raise ValueError(f"lambert_w_lower requires -1/e < z < 0, got {z}")

    if z < -0.25:
        # series around the branch point; p <= 0 selects the lower branch
        p = -math.sqrt(2.0 * (1.0 + math.e * z))
        w = -1.0 + p - p * p / 3.0 + 11.0 * p ** 3 / 72.0
    else:
        lz = math.log(-z)
        w = lz - math.log(-lz)
    if w > -1.0:
        w = -1.0 - 1e-12

    for _ in range(_MAX_HALLEY):
        ew = math.exp(w)
        g = w * ew - z
        gp = ew * (1.0 + w)
        if gp == 0.0:
            break
        # Halley step: g / (g' - g g'' / (2 g')) with g'' = e^w (2 + w)
        denom = gp - g * ew * (2.0 + w) / (2.0 * gp)
        if denom == 0.0:
            break
        w_next = w - g / denom
        if w_next >= -1.0:
            # keep the iterate on the lower branch
            w_next = 0.5 * (w - 1.0)
        if abs(w_next - w) <= 1e-15 * abs(w_next):
            return w_next
        w = w_next
    return _bisect_lower(z)


def _bisect_lower(z: float) -> float:
    # h(w) = w e^w is strictly decreasing on (-inf, -1], h(-1) = -1/e,
    # h -> 0- as w -> -inf; bracket and bisect.
    hi = -1.0
    lo = -2.0
    while lo * math.exp(lo) < z:
        lo *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) > z:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * abs(lo):
            break
    return 0.5 * (lo + hi)


def competitive_ratio(f: float) -> float:
    """Optimal ratio c(f) = -W(-1/(e(1+f))); equals 1 exactly at f = 0."""
    if f < 0:
        raise ValueError("buyback factor f must be nonnegative")
    if f == 0.0:
        return 1.0
    return -lambert_w_lower(-1.0 / (math.e * (1.0 + f)))


def ratio_formula(r: float, f: float) -> float:
    """Ratio guarantee r ln(r) / (r - 1 - f) of the rounding algorithm."""
    if not (r > 1.0 + f):
        raise ValueError(f"requires r > 1 + f, got r={r}, f={f}")
    return r * math.log(r) / (r - 1.0 - f)


def gma_ratio_bound(r: float, f: float) -> float:
    """Greedy guarantee (r-1)/(r-1-f) on r-structured inputs."""
    if not (r > 1.0 + f):
        raise ValueError(f"requires r > 1 + f, got r={r}, f={f}")
    return (r - 1.0) / (r - 1.0 - f)


def optimal_r(f: float) -> float:
    """Minimizing rounding base (1+f) * c(f).

    At f = 0 the minimum of r ln r / (r - 1) is not attained on (1, inf);
    the open-interval infimum 1.0 is returned (see RatioConstants.degenerate).
    """
    if f < 0:
        raise ValueError("buyback factor f must be nonnegative")
    return (1.0 + f) * competitive_ratio(f)


@dataclass(frozen=True)
class RatioConstants:
    """Bundle of the ratio constants for a buyback factor."""

    f: float
    c_star: float
    r_star: float
    degenerate: bool   # True iff f == 0, where r_star is only an infimum

    @classmethod
    def for_factor(cls, f: float) -> "RatioConstants":
        c = competitive_ratio(f)
        return cls(f=f, c_star=c, r_star=(1.0 + f) * c, degenerate=(f == 0.0))
