"""Certified nonnegative reals.

A ``NormValue`` is either an exact nonnegative rational or a closed interval
[lo, hi] of dyadic rationals known to contain the true value.  Interval
endpoints come from outward rounding at a configurable binary precision
(default 128 bits); sums, products, maxima and rational powers all preserve
the enclosure, so any comparison certified through ``le``/``lt`` is sound.
"""

from fractions import Fraction

from .numbers import iroot, rational_root

DEFAULT_BITS = 128

_bits = DEFAULT_BITS


def default_bits() -> int:
    return _bits


def set_default_bits(bits: int) -> None:
    global _bits
    if bits < 8:
        raise ValueError("precision below 8 bits is not supported")
    _bits = bits


def round_down(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(x.numerator * scale // x.denominator, scale)


def round_up(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def root_bounds(x: Fraction, k: int, bits: int):
    """Dyadic lo <= x**(1/k) <= hi for x >= 0, outward at ``bits`` bits."""
    if x < 0:
        raise ValueError("root of a negative value")
    if x == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << bits
    shifted = x.numerator * scale ** k
    t_lo = shifted // x.denominator
    m_lo = iroot(t_lo, k)
    t_hi = -((-shifted) // x.denominator)
    m_hi = iroot(t_hi, k)
    if m_hi ** k < t_hi:
        m_hi += 1
    return Fraction(m_lo, scale), Fraction(m_hi, scale)


class NormValue:
    """Exact rational or outward-rounded enclosure of a nonnegative real."""

    __slots__ = ("lo", "hi", "exact")

    def __init__(self, lo: Fraction, hi: Fraction, exact=None):
        if lo < 0 or hi < lo:
            raise ValueError(f"bad enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.exact = exact

    @classmethod
    def of(cls, q) -> "NormValue":
        q = Fraction(q)
        if q < 0:
            raise ValueError("norm values are nonnegative")
        return cls(q, q, q)

    @classmethod
    def interval(cls, lo, hi) -> "NormValue":
        return cls(Fraction(lo), Fraction(hi))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def width(self) -> Fraction:
        return self.hi - self.lo

    def __repr__(self):
        if self.is_exact:
            return f"NormValue({self.exact})"
        return f"NormValue[{self.lo}, {self.hi}]"

    def __eq__(self, other):
        if isinstance(other, NormValue):
            if self.is_exact and other.is_exact:
                return self.exact == other.exact
            return self.lo == other.lo and self.hi == other.hi
        if self.is_exact:
            return self.exact == other
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi, self.exact))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "NormValue":
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return NormValue.of(self.exact + other.exact)
        return NormValue(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other) -> "NormValue":
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return NormValue.of(self.exact * other.exact)
        return NormValue(self.lo * other.lo, self.hi * other.hi)

    __rmul__ = __mul__

    def max_with(self, other) -> "NormValue":
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return NormValue.of(max(self.exact, other.exact))
        return NormValue(max(self.lo, other.lo), max(self.hi, other.hi))

    def min_with(self, other) -> "NormValue":
        other = _coerce(other)
        if self.is_exact and other.is_exact:
            return NormValue.of(min(self.exact, other.exact))
        return NormValue(min(self.lo, other.lo), min(self.hi, other.hi))

    def pow_rational(self, e, bits=None) -> "NormValue":
        """self ** e for rational e, exact whenever representable."""
        e = Fraction(e)
        bits = bits or _bits
        if e == 0:
            return NormValue.of(1)
        if self.is_exact:
            q = self.exact
            if q == 0:
                if e < 0:
                    raise ZeroDivisionError("0 ** negative")
                return NormValue.of(0)
            if e.denominator == 1:
                return NormValue.of(q ** e.numerator)
            root = rational_root(q, e.denominator)
            if root is not None:
                return NormValue.of(root ** e.numerator)
            z = q ** e.numerator
            lo, hi = root_bounds(z, e.denominator, bits)
            return NormValue(lo, hi)
        if e > 0:
            return NormValue(
                _pow_lo(self.lo, e, bits), _pow_hi(self.hi, e, bits)
            )
        if self.lo == 0:
            raise ZeroDivisionError("negative power of interval touching 0")
        return NormValue(_pow_lo(self.hi, e, bits), _pow_hi(self.lo, e, bits))

    def reciprocal(self, bits=None) -> "NormValue":
        return self.pow_rational(-1, bits)

    def rounded(self, bits=None) -> "NormValue":
        """Outward-round endpoints to dyadics at the given precision."""
        bits = bits or _bits
        if self.is_exact:
            return self
        return NormValue(round_down(self.lo, bits), round_up(self.hi, bits))

    # -- certified comparisons ---------------------------------------------

    def le(self, other) -> bool:
        """Certainly <=: true only when the enclosures prove it."""
        other = _coerce(other)
        return self.hi <= other.lo

    def lt(self, other) -> bool:
        other = _coerce(other)
        return self.hi < other.lo

    def ge(self, other) -> bool:
        return _coerce(other).le(self)

    def gt(self, other) -> bool:
        return _coerce(other).lt(self)

    def overlaps(self, other) -> bool:
        other = _coerce(other)
        return self.lo <= other.hi and other.lo <= self.hi


def _pow_lo(x: Fraction, e: Fraction, bits: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    z = x ** e.numerator
    if e.denominator == 1:
        return z
    return root_bounds(z, e.denominator, bits)[0]


def _pow_hi(x: Fraction, e: Fraction, bits: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    z = x ** e.numerator
    if e.denominator == 1:
        return z
    return root_bounds(z, e.denominator, bits)[1]


def _coerce(v) -> NormValue:
    if isinstance(v, NormValue):
        return v
    return NormValue.of(v)


def nv_sum(values) -> NormValue:
    out = NormValue.of(0)
    for v in values:
        out = out + v
    return out


def nv_max(values) -> NormValue:
    out = None
    for v in values:
        v = _coerce(v)
        out = v if out is None else out.max_with(v)
    return NormValue.of(0) if out is None else out
