"""Deterministic 64-bit random number generation for simulation kernels.

The compiled kernel and the pure-Python kernel share one RNG definition
(splitmix64) so that both backends produce identical trial streams.  Per-trial
streams are derived from the master seed by a counter-based split, which makes
trials independent of execution order.
"""

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# 2**-53, so 53 high bits of the output map onto [0, 1)
_TO_UNIT = 1.0 / 9007199254740992.0


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def trial_seed(master_seed: int, trial: int) -> int:
    """Counter-based per-trial seed: mix(master + (trial+1) * gamma)."""
    if trial < 0:
        raise ValueError("trial index must be nonnegative")
    return _mix((master_seed + (trial + 1) * _GAMMA) & _MASK64)


class SplitMix64:
    """Minimal splitmix64 stream exposing the ``random()`` protocol.

    Any object with a ``random() -> float in [0, 1)`` method can drive the
    randomized algorithms; this class is the reference stream used by the
    kernels and reproduced bit-for-bit by the compiled backend.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def random(self) -> float:
        self._state = (self._state + _GAMMA) & _MASK64
        return (_mix(self._state) >> 11) * _TO_UNIT
