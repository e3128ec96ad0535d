"""Pure-Python Monte Carlo kernel (reference backend).

Runs the rounding + filtering algorithm for many independent trials and
accumulates per-prefix net payoffs with compensated summation.  The compiled
backend reproduces this trial-for-trial: same per-trial seed derivation, same
draw order, same floating-point update order.
"""

from __future__ import annotations

import numpy as np

from ..algorithms import prefix_nets, run_randalg
from ..matroids import Instance
from ..rng import SplitMix64, trial_seed


def randalg_prefix_stats(instance: Instance, f: float, r: float,
                         trials: int, seed: int):
    """Sum and sum-of-squares of the running net payoff after each arrival,
    accumulated over ``trials`` independent runs.

    Returns (sums, sumsqs) as float64 arrays of length n.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = instance.n
    sums = np.zeros(n)
    sumsqs = np.zeros(n)
    comp_s = np.zeros(n)
    comp_q = np.zeros(n)
    for t in range(trials):
        rng = SplitMix64(trial_seed(seed, t))
        trace = run_randalg(instance, f, r, rng)
        nets = prefix_nets(trace, instance.values, f)
        for p, cur in enumerate(nets):
            # Kahan compensated accumulation, matching the compiled kernel
            yy = cur - comp_s[p]
            tt = sums[p] + yy
            comp_s[p] = (tt - sums[p]) - yy
            sums[p] = tt
            sq = cur * cur
            yy = sq - comp_q[p]
            tt = sumsqs[p] + yy
            comp_q[p] = (tt - sumsqs[p]) - yy
            sumsqs[p] = tt
    return sums, sumsqs
