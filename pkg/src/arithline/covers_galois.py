"""Constructive inputs of the cyclic-cover and group-gluing constructions.

The analytic core is the binomial n-th-root series g = sum C(1/n, i) Z^i,
whose coefficients are p-integral whenever p does not divide n, and the
factorization S^n - p^n - T = prod_j (S - p zeta^j g) over a primitive n-th
root of unity zeta in Z_p (p = 1 mod n).  The combinatorial core is the
coset bookkeeping sigma_i and the left-translation embedding mu of a finite
group into the permutations of its own elements.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    BadDescriptor,
    CongruenceFails,
    NoneFound,
    NotLiftable,
    NotSimpleRoot,
    PDividesN,
    PrecisionInsufficient,
)
from .normvalue import root_bounds, default_bits
from .numbers import is_prime, lcm_list, vp
from .padic import PadicApprox
from .series_ring import LaurentPoly, series_add, series_mul, series_scale, series_sub


def find_prime_congruent(n: int, bound: int = 10000) -> int:
    """Least prime p <= bound with p = 1 (mod n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 2
    q = 2
    while q <= bound:
        if q % n == 1 and is_prime(q):
            return q
        q += 1
    raise NoneFound(f"no prime = 1 mod {n} up to {bound}")


def primitive_root_of_unity(n: int, p: int, N: int) -> PadicApprox:
    """A primitive n-th root of unity in Z_p at precision p^N.

    Found by exhaustive search mod p and lifted by the Newton step for
    X^n - 1 (the derivative n X^(n-1) is a unit since p does not divide n).
    """
    if n < 1 or N < 1:
        raise ValueError("need n >= 1, N >= 1")
    if n == 1:
        return PadicApprox(p, N, 1)
    if (p - 1) % n != 0:
        raise CongruenceFails(f"{p} is not 1 mod {n}")
    divisors = [n // q for q in _prime_divisors(n)]
    seed = None
    for z in range(2, p):
        if pow(z, n, p) == 1 and all(pow(z, e, p) != 1 for e in divisors):
            seed = z
            break
    if seed is None:
        raise CongruenceFails(f"no primitive {n}-th root mod {p}")
    x = seed
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        mod = p ** prec
        fx = (pow(x, n, mod) - 1) % mod
        dfx = n * pow(x, n - 1, mod) % mod
        x = (x - fx * pow(dfx, -1, mod)) % mod
    return PadicApprox(p, N, x)


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class BinomialReport:
    """Certificate data for a truncated binomial root series."""

    n: int
    order: int
    power_identity_ok: bool  # g**n == 1 + Z mod Z^order, checked exactly
    p: Optional[int] = None
    integral_at_p: Optional[bool] = None
    min_valuation: Optional[int] = None


def binomial_coefficient_series(n: int, m: int) -> LaurentPoly:
    """g = sum_{i<m} C(1/n, i) Z^i with exact rational coefficients."""
    coeffs = {}
    c = Fraction(1)
    k = Fraction(1, n)
    for i in range(m):
        if c:
            coeffs[i] = c
        c = c * (k - i) / (i + 1)
    return LaurentPoly(coeffs, m)


def binomial_root_series(n: int, m: int, p: Optional[int] = None):
    """The truncated n-th root of 1 + Z, with its exactness certificate.

    Returns (g, report); the report confirms g**n = 1 + Z mod Z^m exactly
    and, when a prime p with p not dividing n is supplied, that every
    coefficient is p-integral.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1, m >= 1")
    g = binomial_coefficient_series(n, m)
    power = LaurentPoly.one(m)
    for _ in range(n):
        power = series_mul(power, g)
    target = LaurentPoly({0: 1, 1: 1} if m > 1 else {0: 1}, m)
    ok = power == target
    if p is None:
        return g, BinomialReport(n=n, order=m, power_identity_ok=ok)
    if n % p == 0:
        raise PDividesN(f"{p} divides {n}; coefficients are not p-integral")
    vals = [vp(c, p) for c in g.coeffs.values() if c]
    min_v = min(vals) if vals else 0
    return g, BinomialReport(
        n=n,
        order=m,
        power_identity_ok=ok,
        p=p,
        integral_at_p=min_v >= 0,
        min_valuation=min_v,
    )


@dataclass(frozen=True)
class CoverDescriptor:
    """Data of the cyclic cover S^n = p^n + T trivialized by g."""

    n: int
    p: int
    zeta: PadicApprox
    m: int
    g: LaurentPoly

    def __post_init__(self):
        if self.n < 1:
            raise BadDescriptor("n must be >= 1")
        if (self.p - 1) % self.n != 0:
            raise BadDescriptor(f"{self.p} is not 1 mod {self.n}")
        if pow(self.zeta.residue, self.n, self.zeta.modulus) != 1:
            raise BadDescriptor("zeta^n != 1 at the stored precision")
        if self.n > 1 and any(
            pow(self.zeta.residue, self.n // q, self.p) == 1
            for q in _prime_divisors(self.n)
        ):
            raise BadDescriptor("zeta is not primitive mod p")
        power = LaurentPoly.one(self.m)
        for _ in range(self.n):
            power = series_mul(power, self.g)
        target = LaurentPoly({0: 1, 1: 1} if self.m > 1 else {0: 1}, self.m)
        if power != target:
            raise BadDescriptor("g**n != 1 + Z mod Z^m")

    @classmethod
    def build(cls, n: int, p: int, m: int, N: int) -> "CoverDescriptor":
        zeta = primitive_root_of_unity(n, p, N)
        g, report = binomial_root_series(n, m, None if n % p == 0 else p)
        if not report.power_identity_ok:
            raise BadDescriptor("binomial certificate failed")
        return cls(n=n, p=p, zeta=zeta, m=m, g=g)


@dataclass(frozen=True)
class CoverSplitReport:
    """Per-coefficient defects of the cyclic-cover factorization.

    The product prod_j (S - p zeta^j g(Z)) is compared with
    S^n - p^n (1 + Z) coefficientwise mod Z^m.  A defect at S^k Z^j is
    recorded with its p-adic valuation; it counts as zero at precision when
    the valuation reaches N.  In the T-coordinates (T = p^n Z) the same
    defect sits at valuation >= N - n*j, the stretch being the exact
    reparametrization slack.
    """

    n: int
    p: int
    N: int
    defects: tuple  # (k, j, valuation) for nonzero defects
    zero_at_precision: bool


def cyclic_cover_split(desc: CoverDescriptor, N: Optional[int] = None) -> CoverSplitReport:
    """Verify the factorization of S^n - p^n - T through the root series."""
    N = desc.zeta.N if N is None else N
    if N < 1:
        raise PrecisionInsufficient("need N >= 1")
    n, p, m = desc.n, desc.p, desc.m
    z = desc.zeta.residue
    # roots rho_j = p * z^j * g(Z); expand prod (S - rho_j) over Q[Z]/Z^m
    coeffs = [LaurentPoly.one(m)]  # coefficients of S^k, ascending in k
    for j in range(n):
        rho = series_scale(p * pow(z, j, desc.zeta.modulus), desc.g)
        new = [LaurentPoly.zero(m) for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            new[k + 1] = series_add(new[k + 1], c)
            new[k] = series_sub(new[k], series_mul(rho, c))
        coeffs = new
    # target: S^n - p^n - p^n Z
    target = [LaurentPoly.zero(m) for _ in range(n + 1)]
    target[n] = LaurentPoly.one(m)
    target[0] = LaurentPoly({0: -(p ** n), 1: -(p ** n)}, m)
    defects = []
    ok = True
    for k in range(n + 1):
        diff = series_sub(coeffs[k], target[k])
        for j, c in diff.coeffs.items():
            v = vp(c, p)
            defects.append((k, j, v))
            if v < N:
                ok = False
    if not ok:
        raise PrecisionInsufficient(
            f"defects below p^{N}: {[(k, j, v) for k, j, v in defects if v < N]}"
        )
    return CoverSplitReport(n=n, p=p, N=N, defects=tuple(defects), zero_at_precision=True)


# -- Eisenstein witnesses ------------------------------------------------------


@dataclass(frozen=True)
class EisensteinWitness:
    root: LaurentPoly
    N: int  # lcm of coefficient denominators
    radii: dict  # Place -> certified positive rational lower bound


def eisenstein_witness(P, f0: LaurentPoly, m: int, places) -> EisensteinWitness:
    """Truncation-level witness for the algebraicity constraints of a series.

    P is a polynomial in S with series coefficients defining f implicitly;
    the truncated root comes from Hensel lifting.  N is the least common
    multiple of the coefficient denominators of the truncation, and each
    requested place receives a certified positive lower bound on the radius
    of convergence of the truncated data, namely min over i >= 1 of
    |a_i|^(-1/i), rounded downward.
    """
    from .weierstrass import hensel_lift_root

    try:
        root, _report = hensel_lift_root(P, f0, m)
    except NotSimpleRoot as exc:
        raise NotLiftable(str(exc)) from exc
    dens = [c.denominator for c in root.coeffs.values()] or [1]
    N = lcm_list(dens)
    radii = {}
    for place in places:
        radii[place] = _radius_witness(root, place)
    return EisensteinWitness(root=root, N=N, radii=radii)


def _radius_witness(root: LaurentPoly, place) -> Fraction:
    """Certified rational lower bound for min_i |a_i|^(-1/i)."""
    best = None
    for i, c in root.coeffs.items():
        if i < 1 or c == 0:
            continue
        if place.is_finite:
            v = vp(c, place.prime)
            inv_abs = Fraction(place.prime) ** v  # |a_i|^-1 exactly
        else:
            inv_abs = 1 / abs(c)
        if i == 1:
            bound = inv_abs
        else:
            bound = root_bounds(inv_abs, i, default_bits())[0]
        if bound == 0:
            # keep the witness positive: round down to a tiny dyadic instead
            bound = Fraction(1, 2 ** default_bits())
        best = bound if best is None else min(best, bound)
    if best is None:
        return Fraction(1)  # constant truncation: every radius works
    return best


# -- finite group tables -------------------------------------------------------


class GroupTable:
    """A finite group as a 1-based Cayley table, validated at construction."""

    __slots__ = ("n", "table", "identity")

    def __init__(self, table):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if any(len(row) != n for row in table):
            raise ValueError("table must be square")
        if any(not 1 <= x <= n for row in table for x in row):
            raise ValueError("entries must lie in [1, n]")
        identity = None
        for e in range(1, n + 1):
            if all(
                table[e - 1][j - 1] == j and table[j - 1][e - 1] == j
                for j in range(1, n + 1)
            ):
                identity = e
                break
        if identity is None:
            raise ValueError("no identity element")
        for i in range(1, n + 1):
            if identity not in table[i - 1]:
                raise ValueError(f"element {i} has no inverse")
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    if (
                        table[table[i - 1][j - 1] - 1][k - 1]
                        != table[i - 1][table[j - 1][k - 1] - 1]
                    ):
                        raise ValueError("associativity fails")
        self.n = n
        self.table = table
        self.identity = identity

    def mul(self, i: int, j: int) -> int:
        return self.table[i - 1][j - 1]

    def power(self, i: int, e: int) -> int:
        acc = self.identity
        for _ in range(e):
            acc = self.mul(acc, i)
        return acc

    def order_of(self, i: int) -> int:
        acc = i
        order = 1
        while acc != self.identity:
            acc = self.mul(acc, i)
            order += 1
        return order

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.table == other.table

    def __repr__(self):
        return f"GroupTable(n={self.n})"


@dataclass(frozen=True)
class CoverGlueData:
    n_i: int
    d_i: int
    reps: tuple  # coset representatives a_{i,0..d_i-1}, least-index rule
    sigma: tuple  # permutation of [1, n] as a 1-based tuple


def group_cover_data(G: GroupTable, i: int) -> CoverGlueData:
    """Coset bookkeeping for the cyclic subgroup generated by g_i.

    reps lists the least-index representatives of G/<g_i>; sigma is the
    permutation with sigma(u*n_i + v) = index of g_{reps[u]} * g_i^(v-1).
    """
    n = G.n
    n_i = G.order_of(i)
    if n % n_i != 0:
        raise ValueError("order does not divide group order")  # impossible
    d_i = n // n_i
    covered = set()
    reps = []
    for j in range(1, n + 1):
        if j in covered:
            continue
        reps.append(j)
        for v in range(n_i):
            covered.add(G.mul(j, G.power(i, v)))
    assert len(reps) == d_i
    sigma = [0] * n
    for u, rep in enumerate(reps):
        for v in range(1, n_i + 1):
            sigma[u * n_i + v - 1] = G.mul(rep, G.power(i, v - 1))
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma is not a bijection")  # pragma: no cover
    return CoverGlueData(n_i=n_i, d_i=d_i, reps=tuple(reps), sigma=tuple(sigma))


@dataclass(frozen=True)
class MuReport:
    perms: dict  # element -> left-translation permutation of [1, n]
    homomorphism: bool
    injective: bool


def mu_homomorphism(G: GroupTable) -> MuReport:
    """The left-translation map h -> alpha_h with its verified properties."""
    n = G.n
    perms = {
        h: tuple(G.mul(h, j) for j in range(1, n + 1)) for h in range(1, n + 1)
    }
    homo = all(
        perms[G.mul(h1, h2)] == tuple(perms[h1][perms[h2][j] - 1] for j in range(n))
        for h1 in range(1, n + 1)
        for h2 in range(1, n + 1)
    )
    inj = len(set(perms.values())) == n
    return MuReport(perms=perms, homomorphism=homo, injective=inj)


# -- a small library of tables -------------------------------------------------


def cyclic_table(n: int) -> GroupTable:
    return GroupTable(
        [[(i + j) % n + 1 for j in range(n)] for i in range(n)]
    )


def direct_product_table(A: GroupTable, B: GroupTable) -> GroupTable:
    pairs = [(a, b) for a in range(1, A.n + 1) for b in range(1, B.n + 1)]
    index = {ab: k + 1 for k, ab in enumerate(pairs)}
    return GroupTable(
        [
            [index[(A.mul(a1, a2), B.mul(b1, b2))] for (a2, b2) in pairs]
            for (a1, b1) in pairs
        ]
    )


def symmetric_table(n: int) -> GroupTable:
    from itertools import permutations

    perms = sorted(permutations(range(n)))
    index = {p: k + 1 for k, p in enumerate(perms)}
    compose = lambda p, q: tuple(p[q[i]] for i in range(n))
    return GroupTable(
        [[index[compose(p, q)] for q in perms] for p in perms]
    )


def dihedral_table(n: int) -> GroupTable:
    """D_n of order 2n: elements r^k and s r^k."""
    elems = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]
    index = {e: i + 1 for i, e in enumerate(elems)}

    def mul(x, y):
        (s1, k1), (s2, k2) = x, y
        if s1 == 0:
            return (s2, (k1 + k2) % n) if s2 == 0 else (1, (k2 - k1) % n)
        return (1, (k1 + k2) % n) if s2 == 0 else (0, (k2 - k1) % n)

    return GroupTable(
        [[index[mul(x, y)] for y in elems] for x in elems]
    )


def quaternion_table() -> GroupTable:
    """Q_8 = {1, -1, i, -i, j, -j, k, -k}."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    index = {nm: k + 1 for k, nm in enumerate(names)}

    def normalize(sign, letter):
        return ("-" if sign < 0 else "") + letter

    base = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }

    def mul(a, b):
        sa = -1 if a.startswith("-") else 1
        sb = -1 if b.startswith("-") else 1
        la, lb = a.lstrip("-"), b.lstrip("-")
        s, l = base[(la, lb)]
        return normalize(sa * sb * s, l)

    return GroupTable(
        [[index[mul(a, b)] for b in names] for a in names]
    )


def standard_group_tables() -> dict:
    """Cyclic up to 8, the Klein four group, S_3, D_4 and Q_8."""
    tables = {f"Z{n}": cyclic_table(n) for n in range(1, 9)}
    tables["Z2xZ2"] = direct_product_table(cyclic_table(2), cyclic_table(2))
    tables["Z2xZ4"] = direct_product_table(cyclic_table(2), cyclic_table(4))
    tables["S3"] = symmetric_table(3)
    tables["D4"] = dihedral_table(4)
    tables["Q8"] = quaternion_table()
    return tables
