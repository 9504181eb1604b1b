"""Deterministic 64-bit hashing.

Everything here is a pure function of the input bits, so partition
assignments and seeded draws are byte-reproducible across runs and
platforms. No use of Python's builtin hash(), which is salted.
"""

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MULT_A = 0xBF58476D1CE4E5B9
_MULT_B = 0x94D049BB133111EB
PAIR_MULT = 0xFF51AFD7ED558CCD


def mix64(x: int) -> int:
    """SplitMix64 finalizer. All arithmetic is modulo 2**64.

    mix64(0) == 0xE220A8397B1DCDAF (frozen test vector).
    """
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _MULT_A) & MASK64
    z = ((z ^ (z >> 27)) * _MULT_B) & MASK64
    return (z ^ (z >> 31)) & MASK64


def pair_hash(a: int, b: int) -> int:
    """Order-sensitive hash of a vertex pair: swapping a and b changes the value."""
    return mix64(mix64(a) ^ ((mix64(b) * PAIR_MULT) & MASK64))


def fold_string(s: str, seed: int = 0) -> int:
    """Deterministic 64-bit digest of a string (byte-wise mix64 fold)."""
    h = seed & MASK64
    for byte in s.encode("utf-8"):
        h = mix64(h ^ byte)
    return h


class SplitMix64:
    """Seeded deterministic integer stream.

    Draw i from seed s is mix64(s + i * golden), the standard SplitMix64
    sequence, so two streams with the same seed produce identical draws.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        out = mix64(self._state)
        self._state = (self._state + _GOLDEN) & MASK64
        return out

    def next_below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n
