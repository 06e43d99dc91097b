"""Deterministic pseudo-randomness for reproducible dataset generation.

Python's ``random`` module does not promise bit-stable streams across
interpreter versions, and numpy's generators are similarly an implementation
detail. Everything in this package that needs randomness (mine placement,
split shuffling) therefore goes through an explicitly specified generator:
a 64-bit seed is expanded by splitmix64 into the 256-bit state of
xoshiro256**, bounded integers are drawn by unbiased rejection, and
sampling without replacement is a Fisher-Yates prefix. The same streams can
be reproduced in any language from this description.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class SplitMix64:
    """Weyl-sequence mixer; used to expand seeds and derive sub-stream seeds."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** with splitmix64 seed expansion.

    The all-zero state is unreachable through seeding: splitmix64 emits four
    consecutive outputs, which are never all zero.
    """

    def __init__(self, seed: int):
        mixer = SplitMix64(seed)
        self._s = [mixer.next_u64() for _ in range(4)]

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s[1] << 17) & _MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection; no modulo bias."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle (forward prefix form)."""
        n = len(items)
        for i in range(n - 1):
            j = i + self.next_below(n - i)
            items[i], items[j] = items[j], items[i]

    def sample(self, population: int, k: int) -> list[int]:
        """k distinct integers from range(population) via a Fisher-Yates prefix.

        Equivalent to the first k entries of a full shuffle, so it is cheap
        even when k << population.
        """
        if not 0 <= k <= population:
            raise ValueError(f"cannot sample {k} items from {population}")
        pool = list(range(population))
        for i in range(k):
            j = i + self.next_below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def substream_seed(seed: int, index: int) -> int:
    """Seed for the index-th sub-stream of a master seed.

    Drawn from the splitmix64 sequence of the master seed, so stream i never
    changes when more streams are requested later.
    """
    if index < 0:
        raise ValueError(f"substream index must be non-negative, got {index}")
    mixer = SplitMix64(seed)
    value = mixer.next_u64()
    for _ in range(index):
        value = mixer.next_u64()
    return value
