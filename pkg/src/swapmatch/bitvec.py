"""Fixed-width bit vectors used for search registers and mask tables.

Bit index 1 is the lowest bit and carries pattern position 1, so a vector
renders position-first: ``BitVec.from_bits("10011")`` has bits 1, 4 and 5 set.
Values are immutable; every operation returns a fresh vector of the same
width, and bits at indices above the width are always zero.
"""

from __future__ import annotations

WORD_BITS = 64


class BitVec:
    __slots__ = ("width", "value")

    width: int
    value: int

    def __init__(self, width: int, value: int = 0) -> None:
        if width < 1:
            raise ValueError(f"width must be positive, got {width}")
        if value < 0 or value >> width:
            raise ValueError(f"value does not fit in {width} bits")
        self.width = width
        self.value = value

    @classmethod
    def from_bits(cls, bits: str) -> BitVec:
        """Parse a position-first rendering such as ``"10011"``."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        value = 0
        for i, ch in enumerate(bits):
            if ch == "1":
                value |= 1 << i
        return cls(len(bits), value)

    def bits(self) -> str:
        """Render position-first: bit 1 is the leftmost character."""
        return "".join("1" if self.value >> i & 1 else "0" for i in range(self.width))

    def words(self) -> tuple[int, ...]:
        """The vector as 64-bit machine words, lowest positions first."""
        n = (self.width + WORD_BITS - 1) // WORD_BITS
        mask = (1 << WORD_BITS) - 1
        return tuple((self.value >> (WORD_BITS * i)) & mask for i in range(n))

    def shift_fwd(self) -> BitVec:
        """Advance every bit one position; bit 1 clears, bit `width` drops."""
        return BitVec(self.width, (self.value << 1) & self._mask())

    def shift_back(self) -> BitVec:
        """Retreat every bit one position; bit 1 drops, bit `width` clears."""
        return BitVec(self.width, self.value >> 1)

    def test(self, i: int) -> bool:
        self._check_index(i)
        return bool(self.value >> (i - 1) & 1)

    def set(self, i: int) -> BitVec:
        self._check_index(i)
        return BitVec(self.width, self.value | (1 << (i - 1)))

    def count(self) -> int:
        return self.value.bit_count()

    def any(self) -> bool:
        return self.value != 0

    def __and__(self, other: BitVec) -> BitVec:
        self._check_width(other)
        return BitVec(self.width, self.value & other.value)

    def __or__(self, other: BitVec) -> BitVec:
        self._check_width(other)
        return BitVec(self.width, self.value | other.value)

    def __invert__(self) -> BitVec:
        return BitVec(self.width, ~self.value & self._mask())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVec):
            return NotImplemented
        return self.width == other.width and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.width, self.value))

    def __repr__(self) -> str:
        return f"BitVec({self.bits()!r})"

    def _mask(self) -> int:
        return (1 << self.width) - 1

    def _check_width(self, other: BitVec) -> None:
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.width:
            raise ValueError(f"bit index {i} out of range 1..{self.width}")
