"""Counter-based splitmix64 streams.

Output ``k`` of a stream seeded with ``s`` is ``mix(s + (k + 1) * GAMMA)``,
which is exactly what the sequential splitmix64 generator produces, so blocks
can be drawn with vectorized numpy arithmetic. Independent streams are derived
from one seed by hashing a text label.
"""

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1


def mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, label: str) -> int:
    """Seed for the sub-stream named ``label`` (FNV-1a hash of the label)."""
    h = 0xCBF29CE484222325
    for byte in label.encode():
        h = ((h ^ byte) * 0x100000001B3) & _MASK
    return mix64((seed ^ h) & _MASK)


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= int(seed) <= _MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.state = int(seed)

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & _MASK
        return mix64(self.state)

    def u64(self, size: int) -> np.ndarray:
        k = np.arange(1, size + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + k * np.uint64(GAMMA)
            out = _mix64_array(z)
        self.state = (self.state + size * GAMMA) & _MASK
        return out

    def random(self, size: int) -> np.ndarray:
        """Uniform floats on [0, 1) with 53 random bits each."""
        return (self.u64(size) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def integers(self, bound: int, size: int) -> np.ndarray:
        """Integers in ``range(bound)``; bias is below 2**-50 for small bounds."""
        return np.floor(self.random(size) * bound).astype(np.int64)

    @classmethod
    def stream(cls, seed: int, label: str) -> "SplitMix64":
        return cls(derive_seed(seed, label))
