"""Deterministic splittable PRNG used by all randomized verification suites.

The generator is SplitMix64: a 64-bit counter advanced by the golden-ratio
increment 0x9E3779B97F4A7C15, finalized through Stafford's mix13 avalanche.
Per-trial streams are derived by counter -- ``stream(seed, t)`` seeds a fresh
generator with ``mix13(seed + (t+1)*GOLDEN)`` -- so trial ``t`` produces the
same values no matter how many other trials ran before it.  Suites are
therefore order-independent and could be evaluated in parallel.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix13(z: int) -> int:
    """Stafford variant-13 finalizer on a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """64-bit SplitMix64 generator with unbiased bounded sampling."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix13(self._state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive, by rejection sampling."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            v = self.next_u64()
            if v < limit:
                return lo + (v % span)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def chance(self, num: int, den: int) -> bool:
        """True with probability num/den."""
        return self.randint(1, den) <= num


def stream(seed: int, index: int) -> SplitMix64:
    """Derive the independent generator for trial number ``index``."""
    return SplitMix64(mix13((seed + (index + 1) * GOLDEN) & MASK64))
