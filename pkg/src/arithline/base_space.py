"""Points, seminorms, compacts and Shilov boundaries of the base space over Z.

The base space is a tree of branches, one per prime plus one archimedean
branch, joined at the central point carrying the trivial absolute value.
Branch coordinates are exponents: the point at exponent eps on the branch of
the place sigma evaluates f to |f|_sigma**eps.  Finite branches end in an
extreme point (exponent +inf) carrying the trivial seminorm of the residue
field; the archimedean branch stops at exponent 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NonIntegralAtExtremePoint, NotInRingOfV, ZeroInput
from .normvalue import NormValue
from .numbers import factor, is_prime, vp

INF = float("inf")


def is_inf(x) -> bool:
    return x == INF


@dataclass(frozen=True)
class Place:
    """A finite place (a prime) or the archimedean place of Q."""

    kind: str  # "finite" | "infinite"
    prime: Optional[int] = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.prime is None or self.prime < 2 or not is_prime(self.prime):
                raise ValueError(f"bad finite place {self.prime}")
        elif self.kind == "infinite":
            if self.prime is not None:
                raise ValueError("infinite place carries no prime")
        else:
            raise ValueError(f"bad place kind {self.kind!r}")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls("finite", p)

    @classmethod
    def infinite(cls) -> "Place":
        return cls("infinite")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def branch_length(self):
        """l(sigma): +inf on finite branches, 1 on the archimedean one."""
        return INF if self.is_finite else Fraction(1)

    def __repr__(self):
        return f"Place({self.prime})" if self.is_finite else "Place(inf)"


@dataclass(frozen=True)
class BasePoint:
    """A multiplicative seminorm on Z: central, internal, or extreme."""

    place: Optional[Place]
    exponent: object  # Fraction >= 0 or INF

    def __post_init__(self):
        e = self.exponent
        if self.place is None:
            if e != 0:
                raise ValueError("central point must have exponent 0")
            return
        if is_inf(e):
            if not self.place.is_finite:
                raise ValueError("extreme points live on finite branches")
            return
        e = Fraction(e)
        object.__setattr__(self, "exponent", e)
        if e <= 0:
            raise ValueError("branch points need a positive exponent")
        if e > self.place.branch_length():
            raise ValueError("exponent exceeds branch length")

    @classmethod
    def central(cls) -> "BasePoint":
        return cls(None, Fraction(0))

    @classmethod
    def branch(cls, place: Place, eps) -> "BasePoint":
        return cls(place, INF if is_inf(eps) else Fraction(eps))

    @classmethod
    def finite(cls, p: int, eps) -> "BasePoint":
        return cls.branch(Place.finite(p), eps)

    @classmethod
    def arch(cls, eps) -> "BasePoint":
        return cls.branch(Place.infinite(), eps)

    @classmethod
    def extreme(cls, p: int) -> "BasePoint":
        return cls(Place.finite(p), INF)

    def __repr__(self):
        if self.place is None:
            return "a_0"
        tag = self.place.prime if self.place.is_finite else "inf"
        if is_inf(self.exponent):
            return f"a~_{tag}"
        return f"a_{tag}^{self.exponent}"


def classify_base_point(x: BasePoint) -> str:
    if x.place is None:
        return "central"
    if is_inf(x.exponent):
        return "extreme"
    return "internal"


def abs_at_place(f: Fraction, place: Place) -> Fraction:
    """|f|_sigma with exponent 1, as an exact rational."""
    f = Fraction(f)
    if f == 0:
        return Fraction(0)
    if place.is_finite:
        return Fraction(place.prime) ** (-vp(f, place.prime))
    return abs(f)


def eval_base_seminorm(f, x: BasePoint) -> NormValue:
    """|f(x)| for rational f, exact whenever the exponent arithmetic is integral."""
    f = Fraction(f)
    if f == 0:
        return NormValue.of(0)
    cat = classify_base_point(x)
    if cat == "central":
        return NormValue.of(1)
    if cat == "extreme":
        p = x.place.prime
        v = vp(f, p)
        if v < 0:
            raise NonIntegralAtExtremePoint(f"{f} has a pole at the extreme point of {p}")
        return NormValue.of(0 if v > 0 else 1)
    base = abs_at_place(f, x.place)
    return NormValue.of(base).pow_rational(x.exponent)


def product_formula_defect(f) -> NormValue:
    """prod over all places of |f|_sigma, computed exactly; equals 1."""
    f = Fraction(f)
    if f == 0:
        raise ZeroInput("product formula needs a nonzero rational")
    acc = abs(f)
    for p in set(factor(f.numerator)) | set(factor(f.denominator)):
        acc *= Fraction(p) ** (-vp(f, p))
    return NormValue.of(acc)


# -- compact connected subsets ----------------------------------------------


@dataclass(frozen=True)
class BaseCompact:
    """A compact connected subset of the base space.

    Segment: the arc [a_sigma^u, a_sigma^v] inside one branch (v may be +inf
    on a finite branch; u = 0 includes the central point).
    Star: a union of initial arcs [a_0, a_sigma^{v_sigma}] over all places,
    where places absent from ``cuts`` are contained in full.
    """

    kind: str  # "segment" | "star"
    place: Optional[Place] = None
    u: object = None
    v: object = None
    cuts: tuple = ()  # sorted tuple of (Place, exponent)

    def __post_init__(self):
        if self.kind == "segment":
            if self.place is None:
                raise ValueError("segment needs a place")
            u = self.u if is_inf(self.u) else Fraction(self.u)
            v = self.v if is_inf(self.v) else Fraction(self.v)
            if is_inf(u) and not is_inf(v):
                raise ValueError("need u <= v")
            if not is_inf(u) and (u < 0 or (not is_inf(v) and u > v)):
                raise ValueError("need 0 <= u <= v")
            if not is_inf(v) and v > self.place.branch_length():
                raise ValueError("v exceeds branch length")
            if is_inf(v) and not self.place.is_finite:
                raise ValueError("archimedean branch has length 1")
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
        elif self.kind == "star":
            cleaned = []
            seen = set()
            for place, cut in self.cuts:
                if place in seen:
                    raise ValueError("duplicate cut")
                seen.add(place)
                if is_inf(cut):
                    continue  # cutting at full branch length = no cut
                cut = Fraction(cut)
                if cut < 0 or cut > place.branch_length():
                    raise ValueError("cut outside branch")
                if not place.is_finite and cut == 1:
                    continue
                cleaned.append((place, cut))
            cleaned.sort(key=_place_sort_key)
            object.__setattr__(self, "cuts", tuple(cleaned))
        else:
            raise ValueError(f"bad compact kind {self.kind!r}")

    @classmethod
    def segment(cls, place: Place, u, v) -> "BaseCompact":
        return cls("segment", place=place, u=u, v=v)

    @classmethod
    def star(cls, cuts) -> "BaseCompact":
        items = cuts.items() if isinstance(cuts, dict) else cuts
        return cls("star", cuts=tuple(items))

    @classmethod
    def whole_space(cls) -> "BaseCompact":
        return cls.star({})

    @classmethod
    def central_point(cls) -> "BaseCompact":
        """The singleton {a_0} as a degenerate segment."""
        return cls.segment(Place.infinite(), 0, 0)

    @classmethod
    def point(cls, x: BasePoint) -> "BaseCompact":
        """The singleton {x} for a branch point (the central point is not a
        segment of any single branch)."""
        if x.place is None:
            raise ValueError("the singleton {a_0} is not a segment; use a star")
        return cls.segment(x.place, x.exponent, x.exponent)

    def contains_central(self) -> bool:
        return self.kind == "star" or self.u == 0

    def cut_map(self) -> dict:
        return dict(self.cuts)

    def cut_primes(self) -> frozenset:
        if self.kind != "star":
            raise ValueError("cut_primes applies to stars")
        return frozenset(pl.prime for pl, _ in self.cuts if pl.is_finite)

    def __repr__(self):
        if self.kind == "segment":
            return f"Segment({self.place!r}, {self.u}, {self.v})"
        cuts = ", ".join(f"{pl!r}->{c}" for pl, c in self.cuts)
        return f"Star({{{cuts}}})"


def _place_sort_key(item):
    place = item[0]
    return (0, place.prime) if place.is_finite else (1, 0)


def member_of_kv(f, V: BaseCompact) -> bool:
    """f in K(V): no pole at any extreme point contained in V."""
    f = Fraction(f)
    if f == 0:
        return True
    den_primes = set(factor(f.denominator))
    if V.kind == "segment":
        if V.place.is_finite and is_inf(V.v):
            return V.place.prime not in den_primes
        return True
    return den_primes <= V.cut_primes()


def require_in_kv(f, V: BaseCompact) -> Fraction:
    f = Fraction(f)
    if not member_of_kv(f, V):
        raise NotInRingOfV(f"{f} has a pole on the compact")
    return f


from functools import lru_cache


@lru_cache(maxsize=512)
def _norm_endpoints(V: BaseCompact):
    """Compile the endpoint list realizing ||.||_V, plus the pole constraint.

    Returns (has_trivial, finite_terms, arch_terms, extreme_primes,
    constrained_primes) where finite_terms is a tuple of (p, exponent) and
    arch_terms a tuple of archimedean exponents.
    """
    if V.kind == "segment":
        place = V.place
        has_trivial = V.u == 0
        exps = []
        if V.u > 0 and not is_inf(V.u):
            exps.append(V.u)
        if V.v > 0 and not is_inf(V.v) and V.v not in exps:
            exps.append(V.v)
        if place.is_finite:
            finite_terms = tuple((place.prime, e) for e in exps)
            extreme = (place.prime,) if is_inf(V.v) else ()
            return has_trivial, finite_terms, (), extreme, extreme
        return has_trivial, (), tuple(exps), (), ()
    arch_cut = next((c for pl, c in V.cuts if not pl.is_finite), None)
    if arch_cut is None:
        arch_terms = (Fraction(1),)
    elif arch_cut > 0:
        arch_terms = (arch_cut,)
    else:
        arch_terms = ()
    finite_terms = tuple(
        (pl.prime, c) for pl, c in V.cuts if pl.is_finite and c > 0
    )
    # uncut finite branches contain their extreme point: f must be integral
    # there, and those branches contribute at most the trivial value 1
    return True, finite_terms, arch_terms, (), ("all_but",) + tuple(sorted(V.cut_primes()))


def norm_bounds(f, V: BaseCompact):
    """Exact Fraction enclosure (lo, hi) of ||f||_V."""
    if not isinstance(f, Fraction):
        f = Fraction(f)
    if f == 0:
        return Fraction(0), Fraction(0)
    has_trivial, finite_terms, arch_terms, extreme, constrained = _norm_endpoints(V)
    if constrained and constrained[0] == "all_but":
        allowed = set(constrained[1:])
        if f.denominator != 1:
            for q in factor(f.denominator):
                if q not in allowed:
                    raise NotInRingOfV(f"{f} has a pole at the extreme point of {q}")
    elif constrained:
        for q in constrained:
            if vp(f, q) < 0:
                raise NotInRingOfV(f"{f} has a pole at the extreme point of {q}")
    lo = hi = Fraction(1) if has_trivial else None
    for p, e in finite_terms:
        ev = -e * vp(f, p)
        if ev.denominator == 1:
            t_lo = t_hi = Fraction(p) ** ev
        else:
            t_lo, t_hi = _pow_bounds(Fraction(p), ev)
        lo, hi = (t_lo, t_hi) if lo is None else (max(lo, t_lo), max(hi, t_hi))
    for e in arch_terms:
        base = abs(f)
        if e.denominator == 1:
            t_lo = t_hi = base ** e
        else:
            t_lo, t_hi = _pow_bounds(base, e)
        lo, hi = (t_lo, t_hi) if lo is None else (max(lo, t_lo), max(hi, t_hi))
    for q in extreme:
        t = Fraction(0) if vp(f, q) > 0 else Fraction(1)
        lo, hi = (t, t) if lo is None else (max(lo, t), max(hi, t))
    if lo is None:
        raise ValueError("compact has no endpoint terms")
    return lo, hi


def _pow_bounds(base: Fraction, e: Fraction):
    from .normvalue import default_bits, root_bounds

    z = base ** e.numerator
    return root_bounds(z, e.denominator, default_bits())


def base_norm(f, V: BaseCompact) -> NormValue:
    """The uniform norm ||f||_V, as a maximum over the case endpoint set."""
    lo, hi = norm_bounds(f, V)
    if lo == hi:
        return NormValue.of(lo)
    return NormValue.interval(lo, hi)


def shilov_base(V: BaseCompact) -> list:
    """The Shilov boundary of V, as the explicit finite list of points."""
    if V.kind == "segment":
        place = V.place
        left = BasePoint.central() if V.u == 0 else BasePoint.branch(place, V.u)
        if is_inf(V.v):
            if is_inf(V.u):
                return [BasePoint.extreme(place.prime)]
            return [left]  # [a^u, extreme] and the whole branch: left endpoint
        right = BasePoint.central() if V.v == 0 else BasePoint.branch(place, V.v)
        return [left] if left == right else [left, right]
    out = []
    arch_cut = next((c for pl, c in V.cuts if not pl.is_finite), None)
    for pl, c in V.cuts:
        if pl.is_finite and 0 < c:
            out.append(BasePoint.branch(pl, c))
    if arch_cut is None:
        out.append(BasePoint.arch(1))
    elif arch_cut == 0:
        out.append(BasePoint.central())
    else:
        out.append(BasePoint.arch(arch_cut))
    return out


@dataclass(frozen=True)
class RingLabel:
    """Identification of the ring of sections B(V)."""

    label: str
    inverted_primes: frozenset = frozenset()
    completion_prime: Optional[int] = None

    def __repr__(self):
        if self.completion_prime is not None:
            return f"RingLabel({self.label}, p={self.completion_prime})"
        if self.inverted_primes:
            inv = ",".join(str(p) for p in sorted(self.inverted_primes))
            return f"RingLabel({self.label}, inverted={{{inv}}})"
        return f"RingLabel({self.label})"


def ring_label(V: BaseCompact) -> RingLabel:
    """Which classical ring B(V) is, by the case analysis of the compact."""
    if V.kind == "segment":
        p = V.place.prime
        if V.place.is_finite:
            if V.u == 0 and is_inf(V.v):
                return RingLabel("Z_(p)", completion_prime=p)
            if V.u == 0:
                return RingLabel("Q")
            if is_inf(V.v):
                return RingLabel("Zp_hat", completion_prime=p)
            return RingLabel("Qp_hat", completion_prime=p)
        if V.u == 0:
            return RingLabel("Q")
        return RingLabel("R")
    inverted = V.cut_primes()
    if not inverted:
        return RingLabel("Z")
    return RingLabel("Z_inverted", inverted_primes=inverted)
