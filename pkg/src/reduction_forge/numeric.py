"""Exact integer helpers and bit-block assembly.

Python integers already are arbitrary precision naturals, so a "BigNat" is
simply a non-negative ``int`` here and a rational is a ``fractions.Fraction``.
What this module adds is the checking that the constructions rely on
(no silent underflow, exact logarithms and roots) and the block layouts used
to write gadget items bit by bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class NumericError(ValueError):
    pass


class Underflow(NumericError):
    pass


class DuplicateBlockName(NumericError):
    pass


class ZeroWidth(NumericError):
    pass


class BlockOverflow(NumericError):
    def __init__(self, name, value, width):
        super().__init__(f"block {name!r}: value {value} does not fit in {width} bits")
        self.name = name


class UnknownBlock(NumericError, KeyError):
    pass


def check_nat(x) -> int:
    """Return ``x`` if it is a non-negative int (bools rejected)."""
    if isinstance(x, bool) or not isinstance(x, int):
        raise NumericError(f"expected a natural number, got {x!r}")
    if x < 0:
        raise NumericError(f"expected a natural number, got {x}")
    return x


def nat_sub(a: int, b: int) -> int:
    if b > a:
        raise Underflow(f"{a} - {b} is negative")
    return a - b


def ceil_log2(x: int) -> int:
    """Exact ceil(log2 x) for x >= 1; ceil_log2(1) == 0."""
    if x < 1:
        raise NumericError("ceil_log2 needs x >= 1")
    return (x - 1).bit_length()


def floor_log2(x: int) -> int:
    if x < 1:
        raise NumericError("floor_log2 needs x >= 1")
    return x.bit_length() - 1


def log_width(m: int) -> int:
    """ceil(log2 m) with m clamped to at least 2, so block widths never vanish."""
    return ceil_log2(max(m, 2))


def iroot_floor(x: int, k: int) -> int:
    """Largest r with r**k <= x."""
    if x < 0 or k < 1:
        raise NumericError("iroot_floor needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    lo, hi = 0, 1 << (x.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def iroot_ceil(x: int, k: int) -> int:
    """Smallest r with r**k >= x."""
    r = iroot_floor(x, k)
    return r if r ** k == x else r + 1


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def rational_root_ceil(x: Fraction, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= x, for rational x >= 0."""
    x = Fraction(x)
    r = iroot_ceil(ceil_div(x.numerator, x.denominator), k)
    # r**k >= ceil(x) >= x; step down while the smaller value still works
    while r > 0 and Fraction((r - 1) ** k) >= x:
        r -= 1
    return r


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` strictly (no floats, no exponents)."""
    if not isinstance(text, str):
        raise NumericError(f"expected a rational string, got {text!r}")
    parts = text.split("/")
    if len(parts) > 2 or not all(p.isdigit() for p in parts):
        raise NumericError(f"malformed rational {text!r}")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if int(parts[1]) == 0:
        raise NumericError(f"zero denominator in {text!r}")
    return Fraction(int(parts[0]), int(parts[1]))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class BitBlockLayout:
    """Named bit blocks, listed from the highest-order block to the lowest."""

    blocks: tuple
    offsets: dict = field(compare=False, repr=False)

    @property
    def width(self) -> int:
        return sum(w for _, w in self.blocks)

    @property
    def names(self) -> list:
        return [name for name, _ in self.blocks]

    def offset(self, name) -> int:
        try:
            return self.offsets[name][0]
        except KeyError:
            raise UnknownBlock(name) from None

    def width_of(self, name) -> int:
        try:
            return self.offsets[name][1]
        except KeyError:
            raise UnknownBlock(name) from None

    def __contains__(self, name) -> bool:
        return name in self.offsets


def build_layout(blocks) -> BitBlockLayout:
    blocks = tuple((name, int(width)) for name, width in blocks)
    offsets = {}
    pos = 0
    for name, width in reversed(blocks):
        if width < 1:
            raise ZeroWidth(name)
        if name in offsets:
            raise DuplicateBlockName(name)
        offsets[name] = (pos, width)
        pos += width
    return BitBlockLayout(blocks, offsets)


class BlockWriter:
    """Collects block values for one integer; unset blocks are zero."""

    def __init__(self, layout: BitBlockLayout):
        self.layout = layout
        self.pending = {}

    def set(self, name, value: int) -> "BlockWriter":
        if name not in self.layout:
            raise UnknownBlock(name)
        self.pending[name] = check_nat(value)
        return self

    def add(self, name, value: int) -> "BlockWriter":
        return self.set(name, self.pending.get(name, 0) + value)


def assemble(writer: BlockWriter) -> int:
    layout = writer.layout
    x = 0
    for name, value in writer.pending.items():
        off, width = layout.offsets[name]
        if value >> width:
            raise BlockOverflow(name, value, width)
        x |= value << off
    return x


def extract_block(x: int, layout: BitBlockLayout, name) -> int:
    off = layout.offset(name)
    return (x >> off) & ((1 << layout.width_of(name)) - 1)
