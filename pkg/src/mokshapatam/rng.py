"""xoshiro256** with SplitMix64 seeding.

Every game (or sampled board) ``k`` of a run seeded with ``seed`` draws from
its own stream, seeded with ``stream_seed(seed, k)``.  Splitting work across
processes therefore never changes results.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _fmix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; returns ``(new_state, output)``."""
    state = (state + GOLDEN) & MASK64
    return state, _fmix(state)


def stream_seed(seed: int, k: int) -> int:
    return _fmix((seed & MASK64) ^ _fmix((k + GOLDEN) & MASK64))


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    __slots__ = ("s",)

    def __init__(self, seed: int):
        st = seed & MASK64
        s = []
        for _ in range(4):
            st, out = splitmix64(st)
            s.append(out)
        self.s = s

    @classmethod
    def for_stream(cls, seed: int, k: int) -> "Xoshiro256":
        return cls(stream_seed(seed, k))

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def die(self) -> int:
        """Uniform face 1..6: top three bits, values 6 and 7 rejected."""
        while True:
            v = self.next_u64() >> 61
            if v < 6:
                return v + 1

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def shuffle_prefix(self, items: list, k: int) -> list:
        """Partial Fisher-Yates: a uniformly random ordered ``k``-sample of ``items``."""
        items = list(items)
        for i in range(k):
            j = i + self.below(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items[:k]
