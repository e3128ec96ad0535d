"""Golden-section search on an interval (1-D, unimodal objectives)."""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(func, lo, hi, tol=1e-8):
    """Return (x, func(x)) maximizing a unimodal func on [lo, hi].

    Converges to a boundary point when the maximum sits on the boundary.
    """
    if hi < lo:
        raise ValueError("empty search interval")
    a, b = lo, hi
    m1 = b - _INVPHI * (b - a)
    m2 = a + _INVPHI * (b - a)
    f1, f2 = func(m1), func(m2)
    while b - a > tol:
        if f1 >= f2:
            b, m2, f2 = m2, m1, f1
            m1 = b - _INVPHI * (b - a)
            f1 = func(m1)
        else:
            a, m1, f1 = m1, m2, f2
            m2 = a + _INVPHI * (b - a)
            f2 = func(m2)
    x = 0.5 * (a + b)
    return x, func(x)


def golden_section_min(func, lo, hi, tol=1e-8):
    x, fneg = golden_section_max(lambda t: -func(t), lo, hi, tol)
    return x, -fneg
