"""Deterministic pseudo-random primitives.

Train/test splits and synthetic noise textures must be bit-reproducible
across machines, Python versions, and numpy versions, so this module fixes
the generator instead of delegating to a platform RNG. The algorithm is
splitmix64 (Steele, Lea and Flood, "Fast Splittable Pseudorandom Number
Generators", OOPSLA 2014): a 64-bit counter advanced by a golden-ratio
increment and passed through a two-round xor-shift/multiply finalizer.

All arithmetic is modulo 2**64. Bounded draws use rejection sampling so
they are unbiased, and the whole scheme is documented in the README as
part of the reproducibility contract.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    """splitmix64 finalizer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_seed(seed, stream):
    """Derive an independent generator seed for (seed, stream).

    Used so each class (or each synthesis channel) gets its own stream:
    two mixed values are combined with xor, which decorrelates streams
    even for adjacent seeds or stream ids.
    """
    return mix64(seed) ^ mix64(((stream + 1) * GOLDEN_GAMMA) & MASK64)


class SplitMix64:
    """splitmix64 generator over a 64-bit state."""

    def __init__(self, seed):
        self._state = seed & MASK64

    def next_u64(self):
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return mix64(self._state)

    def below(self, n):
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def sample(self, n, k):
        """k distinct indices from range(n) by partial Fisher-Yates shuffle.

        Returned in draw order; the caller may sort. Requires 0 <= k <= n.
        """
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        pool = list(range(n))
        for i in range(k):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
