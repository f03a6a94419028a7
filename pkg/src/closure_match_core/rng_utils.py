"""closure_match_core/rng_utils.py.

SplitMix64, a small PRNG with a fixed bit-level definition.

Every generator in this package draws from it, so a seed produces the same
instance on every platform and Python version.

Step: ``state += 0x9E3779B97F4A7C15``; output ``z = state``,
``z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9``, ``z = (z ^ z >> 27) * 0x94D049BB133111EB``,
``z ^ z >> 31`` (all modulo 2**64).

"""

from collections.abc import MutableSequence
from typing import TypeVar

__all__ = ["SplitMix64", "derive_seed"]

T = TypeVar("T")

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Deterministic 64-bit generator.

    Args:
        seed (int): Any integer; reduced modulo 2**64.
    """

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        """Return the next 64-bit output."""
        self.state = (self.state + GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Return a uniform integer in [0, n) using rejection sampling."""
        if n < 1:
            raise ValueError(f"below() needs n >= 1, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def random(self) -> float:
        """Return a float in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def chance(self, p: float) -> bool:
        """Return True with probability p."""
        return self.random() < p

    def shuffle(self, items: MutableSequence[T]) -> None:
        """Shuffle in place (Fisher-Yates, from the last position down)."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(seed: int, index: int) -> int:
    """Return the sub-seed for trial ``index`` of a run seeded with ``seed``."""
    return SplitMix64((seed + (index + 1) * GAMMA) & MASK64).next_u64()
