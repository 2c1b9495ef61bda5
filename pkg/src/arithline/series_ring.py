"""Laurent polynomials as the finite stand-in for series on relative annuli.

The weighted norm of sum a_k T^k on the annulus s <= |T| <= t over a compact
V is sum ||a_k||_V * max(s^k, t^k); over an ultrametric V the uniform
(spectral) norm replaces the sum by a max and is attained on the finite
Shilov boundary.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from .base_space import BaseCompact, member_of_kv
from .affine_line import LinePoint
from .errors import (
    ArchimedeanBase,
    NegativePowersOnDisk,
    NotAUnit,
    OrderingViolated,
)
from .normvalue import NormValue


class LaurentPoly:
    """Finitely supported Laurent polynomial over Q.

    ``trunc_mod = m`` marks the object as a representative of its class
    modulo T^m; all stored indices are then < m.
    """

    __slots__ = ("coeffs", "trunc_mod")

    def __init__(self, coeffs=None, trunc_mod: Optional[int] = None):
        data = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for k, c in items:
                c = Fraction(c)
                if c != 0:
                    data[int(k)] = data.get(int(k), Fraction(0)) + c
            data = {k: c for k, c in data.items() if c != 0}
        if trunc_mod is not None:
            trunc_mod = int(trunc_mod)
            data = {k: c for k, c in data.items() if k < trunc_mod}
        self.coeffs = dict(sorted(data.items()))
        self.trunc_mod = trunc_mod

    @classmethod
    def _raw(cls, data: dict, trunc_mod=None) -> "LaurentPoly":
        """Trusted constructor: values are nonzero Fractions, keys < mod."""
        obj = object.__new__(cls)
        obj.coeffs = data
        obj.trunc_mod = trunc_mod
        return obj

    @classmethod
    def from_poly(cls, coeffs, trunc_mod=None) -> "LaurentPoly":
        return cls(dict(enumerate(coeffs)), trunc_mod)

    @classmethod
    def monomial(cls, k: int, c=1, trunc_mod=None) -> "LaurentPoly":
        return cls({k: c}, trunc_mod)

    @classmethod
    def zero(cls, trunc_mod=None) -> "LaurentPoly":
        return cls({}, trunc_mod)

    @classmethod
    def one(cls, trunc_mod=None) -> "LaurentPoly":
        return cls({0: 1}, trunc_mod)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.trunc_mod == other.trunc_mod

    def __hash__(self):
        return hash((tuple(sorted(self.coeffs.items())), self.trunc_mod))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"({self.coeffs[k]})T^{k}" for k in sorted(self.coeffs))
        tail = f" mod T^{self.trunc_mod}" if self.trunc_mod is not None else ""
        return f"LaurentPoly({body}{tail})"

    def coeff(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def support(self):
        return sorted(self.coeffs)

    def min_index(self):
        return min(self.coeffs) if self.coeffs else None

    def max_index(self):
        return max(self.coeffs) if self.coeffs else None

    def has_negative_support(self) -> bool:
        return bool(self.coeffs) and min(self.coeffs) < 0

    def degree(self):
        """Degree as a polynomial (max index); None for 0."""
        return self.max_index()

    def is_polynomial(self) -> bool:
        return not self.has_negative_support()

    def poly_coeffs(self) -> tuple:
        """Ascending dense coefficients; requires nonnegative support."""
        if self.has_negative_support():
            raise ValueError("negative support")
        n = (self.max_index() or 0) + 1 if self.coeffs else 0
        return tuple(self.coeff(k) for k in range(n))

    def with_mod(self, trunc_mod) -> "LaurentPoly":
        return LaurentPoly(self.coeffs, trunc_mod)

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly({k: fn(c) for k, c in self.coeffs.items()}, self.trunc_mod)

    def shift(self, j: int) -> "LaurentPoly":
        mod = None if self.trunc_mod is None else self.trunc_mod + j
        return LaurentPoly({k + j: c for k, c in self.coeffs.items()}, mod)

    def window(self, lo: int, hi: int) -> "LaurentPoly":
        """Keep indices lo <= k < hi (internal truncation helper)."""
        return LaurentPoly(
            {k: c for k, c in self.coeffs.items() if lo <= k < hi}, self.trunc_mod
        )


def _result_mod(f: LaurentPoly, g: LaurentPoly):
    mods = [m for m in (f.trunc_mod, g.trunc_mod) if m is not None]
    return min(mods) if mods else None


def series_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    out = dict(f.coeffs)
    for k, c in g.coeffs.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return LaurentPoly._raw(out, _result_mod(f, g))


def series_neg(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly._raw({k: -c for k, c in f.coeffs.items()}, f.trunc_mod)


def series_sub(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return series_add(f, series_neg(g))


def _common_denominator(f: LaurentPoly):
    den = 1
    for c in f.coeffs.values():
        d = c.denominator
        den = den * d // gcd(den, d)
    return den


def series_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    # convolve over Z after clearing denominators: plain int arithmetic is
    # several times cheaper than Fraction arithmetic in the inner loop
    den_f = _common_denominator(f)
    den_g = _common_denominator(g)
    fi = [(k, (c.numerator * den_f) // c.denominator) for k, c in f.coeffs.items()]
    gi = [(k, (c.numerator * den_g) // c.denominator) for k, c in g.coeffs.items()]
    out = {}
    for i, a in fi:
        for j, b in gi:
            k = i + j
            prev = out.get(k)
            out[k] = a * b if prev is None else prev + a * b
    # a factor known mod T^m contributes uncertainty only from T^(m + val) on
    mods = []
    if f.trunc_mod is not None:
        mods.append(f.trunc_mod + (g.min_index() or 0))
    if g.trunc_mod is not None:
        mods.append(g.trunc_mod + (f.min_index() or 0))
    mod = min(mods) if mods else None
    den = den_f * den_g
    coeffs = {
        k: Fraction(c, den)
        for k, c in out.items()
        if c and (mod is None or k < mod)
    }
    return LaurentPoly._raw(coeffs, mod)


def series_scale(a, f: LaurentPoly) -> LaurentPoly:
    a = Fraction(a)
    if a == 0:
        return LaurentPoly._raw({}, f.trunc_mod)
    return LaurentPoly._raw({k: a * c for k, c in f.coeffs.items()}, f.trunc_mod)


def series_arith(f: LaurentPoly, g: LaurentPoly, op: str) -> LaurentPoly:
    """Ring operation dispatch; result modulus is the min of the input moduli.

    (Internally products carry the sharper modulus min(mod_f + val g,
    mod_g + val f); the public dispatch reports the conservative contract.)
    """
    if op == "add":
        return series_add(f, g)
    if op == "mul":
        out = series_mul(f, g)
        mods = [m for m in (f.trunc_mod, g.trunc_mod) if m is not None]
        return out.with_mod(min(mods)) if mods else out
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class AnnulusSpec:
    """The relative annulus s <= |T| <= t over the base compact V."""

    V: BaseCompact
    s: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "t", Fraction(self.t))
        if not (0 <= self.s <= self.t):
            raise ValueError("need 0 <= s <= t")

    def radius_weight(self, k: int) -> Fraction:
        """max(s^k, t^k); requires s > 0 when k < 0."""
        if k < 0 and self.s == 0:
            raise NegativePowersOnDisk("negative index on a disk (s = 0)")
        return _weight(self.s, self.t, k)


@lru_cache(maxsize=65536)
def _weight(s: Fraction, t: Fraction, k: int) -> Fraction:
    return max(s ** k, t ** k)


def is_archimedean_compact(V: BaseCompact) -> bool:
    """Does V contain a point of the archimedean branch other than a_0?"""
    if V.kind == "segment":
        return not V.place.is_finite and V.v > 0
    arch_cut = next((c for pl, c in V.cuts if not pl.is_finite), None)
    return arch_cut is None or arch_cut > 0


def _check_support(f: LaurentPoly, A: AnnulusSpec):
    if f.has_negative_support() and A.s == 0:
        raise NegativePowersOnDisk("series has negative powers but s = 0")


def norm_annulus(f: LaurentPoly, A: AnnulusSpec) -> NormValue:
    """The weighted norm  sum_k ||a_k||_V max(s^k, t^k)."""
    from .base_space import norm_bounds

    _check_support(f, A)
    lo = hi = Fraction(0)
    for k, c in f.coeffs.items():
        w = A.radius_weight(k)
        c_lo, c_hi = norm_bounds(c, A.V)
        lo += c_lo * w
        hi += c_hi * w
    if lo == hi:
        return NormValue.of(lo)
    return NormValue.interval(lo, hi)


def uniform_norm_annulus(
    f: LaurentPoly, A: AnnulusSpec, archimedean_upper_bound: bool = False
) -> NormValue:
    """The spectral norm  max_k ||a_k||_V max(s^k, t^k)  over ultrametric V.

    Over a compact touching the archimedean branch the max formula is only a
    lower bound for the true sup; pass ``archimedean_upper_bound=True`` to
    get the sum norm back as a certified upper bound instead of an error.
    """
    from .base_space import norm_bounds

    if is_archimedean_compact(A.V):
        if archimedean_upper_bound:
            return norm_annulus(f, A)
        raise ArchimedeanBase("uniform norm needs an ultrametric base compact")
    _check_support(f, A)
    lo = hi = Fraction(0)
    for k, c in f.coeffs.items():
        w = A.radius_weight(k)
        c_lo, c_hi = norm_bounds(c, A.V)
        lo = max(lo, c_lo * w)
        hi = max(hi, c_hi * w)
    if lo == hi:
        return NormValue.of(lo)
    return NormValue.interval(lo, hi)


def compare_annulus_factor(s, t, u, v) -> Fraction:
    """The norm-comparison factor s/(u-s) + t/(t-v) for s < u <= v < t."""
    s, t, u, v = (Fraction(x) for x in (s, t, u, v))
    if not (s < u <= v < t):
        raise OrderingViolated(f"need s < u <= v < t, got {(s, u, v, t)}")
    first = Fraction(0) if s == 0 else s / (u - s)
    return first + t / (t - v)


def _unit_in_kv(c: Fraction, V: BaseCompact) -> bool:
    return c != 0 and member_of_kv(c, V) and member_of_kv(1 / c, V)


def invert_unit(f: LaurentPoly, A: AnnulusSpec, m: int) -> LaurentPoly:
    """Inverse of f = c T^j (1 + h) with certified ||h||_{A} < 1, mod T^m.

    Two one-sided shapes are supported: h supported in positive degrees
    (series shape, inverted by exact triangular division) and h supported in
    negative degrees (co-series shape).  The certificate is the annulus norm
    of h; if neither shape certifies, the input is rejected.
    """
    if not f:
        raise NotAUnit("zero is not a unit")
    if m < 1:
        raise ValueError("truncation target must be positive")
    if f.has_negative_support() and A.s == 0:
        raise NegativePowersOnDisk("f has negative powers but the annulus is a disk")
    # series shape: pivot at the lowest index
    k0 = f.min_index()
    c0 = f.coeff(k0)
    h_lo = LaurentPoly({k - k0: c / c0 for k, c in f.coeffs.items() if k != k0})
    if _unit_in_kv(c0, A.V) and _h_certifies(h_lo, A):
        inv = _invert_one_plus(h_lo, m, ascending=True)
        out = series_scale(1 / c0, inv).shift(-k0)
        return out.with_mod(m) if k0 == 0 else out
    # co-series shape: pivot at the highest index
    k1 = f.max_index()
    c1 = f.coeff(k1)
    h_hi = LaurentPoly({k - k1: c / c1 for k, c in f.coeffs.items() if k != k1})
    if _unit_in_kv(c1, A.V) and _h_certifies(h_hi, A):
        inv = _invert_one_plus(h_hi, m, ascending=False)
        return series_scale(1 / c1, inv).shift(-k1)
    raise NotAUnit("no factorization f = c T^k (1 + h) with ||h|| < 1 certified")


def _h_certifies(h: LaurentPoly, A: AnnulusSpec) -> bool:
    if not h:
        return True
    try:
        nrm = norm_annulus(h, A)
    except (NegativePowersOnDisk,):
        return False
    return nrm.lt(1)


def _invert_one_plus(h: LaurentPoly, m: int, ascending: bool) -> LaurentPoly:
    """(1 + h)^{-1} mod T^{+-m} for one-sided h, by triangular recursion."""
    out = {0: Fraction(1)}
    idx = range(1, m) if ascending else range(-1, -m, -1)
    for k in idx:
        acc = Fraction(0)
        for j, c in h.coeffs.items():
            prev = out.get(k - j)
            if prev is not None:
                acc += c * prev
        if acc:
            out[k] = -acc
    return LaurentPoly(out)


def shilov_annulus(A: AnnulusSpec) -> list:
    """Shilov boundary of the relative annulus over an ultrametric compact."""
    if is_archimedean_compact(A.V):
        raise ArchimedeanBase("Shilov description needs an ultrametric base")
    from .base_space import shilov_base

    radii = sorted({r for r in (A.s, A.t) if r > 0})
    if not radii:
        radii = [Fraction(0)]
    out = []
    for v in shilov_base(A.V):
        for r in radii:
            out.append(LinePoint.gauss_point(v, r))
    return out
