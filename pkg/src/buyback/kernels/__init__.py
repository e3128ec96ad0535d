"""Monte Carlo kernel selection: compiled extension when available, pure
Python otherwise.  Both backends implement the same trial contract, so the
choice affects speed only.
"""

from __future__ import annotations

import numpy as np

from ..matroids import Instance
from . import pure

try:
    from . import _fast
    HAVE_FAST = True
except ImportError:
    _fast = None
    HAVE_FAST = False


def backend_name() -> str:
    return "cython" if HAVE_FAST else "pure"


def _encode(instance: Instance):
    enc = instance.oracle.fast_encoding()
    if enc is None:
        return None
    kind = enc[0]
    n = instance.n
    empty = np.zeros(0, dtype=np.int64)
    if kind == "uniform":
        return _fast.KIND_UNIFORM, empty, empty, enc[1]
    if kind == "partition":
        parts = np.asarray(enc[1], dtype=np.int64)
        caps = np.asarray(enc[2], dtype=np.int64)
        return _fast.KIND_PARTITION, parts, caps, len(caps)
    if kind == "graphic":
        edges, nv = enc[1], enc[2]
        a = np.array([e[0] for e in edges], dtype=np.int64)
        b = np.array([e[1] for e in edges], dtype=np.int64)
        return _fast.KIND_GRAPHIC, a, b, nv
    return None


def randalg_prefix_stats(instance: Instance, f: float, r: float, trials: int,
                         seed: int, force_pure: bool = False):
    """Per-prefix (sum, sum of squares) of net payoff over seeded trials."""
    if not force_pure and HAVE_FAST:
        enc = _encode(instance)
        if enc is not None:
            kind, p1, p2, aux = enc
            values = np.asarray(instance.values, dtype=np.float64)
            return _fast.randalg_prefix_stats(values, kind, p1, p2, aux,
                                              float(f), float(r),
                                              int(trials), int(seed))
    return pure.randalg_prefix_stats(instance, f, r, trials, seed)
