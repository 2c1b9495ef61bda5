"""Weierstrass division with certified constants, preparation, Hensel lifting,
residual norms on finite covers, and the resultant interpolation bound.

Global division follows the contraction scheme behind the explicit threshold
condition  sum_k ||g_k|| v^(k-p) <= 1/2, which yields the quotient/remainder
bounds ||Q|| <= 2 v^(-p) ||F|| and ||R|| <= 2 ||F||.  Local division of
truncated series runs the fixed-point operator phi -> alpha(phi) G +
beta(phi) and records its contraction certificate.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .base_space import (
    BaseCompact,
    BasePoint,
    base_norm,
    classify_base_point,
    eval_base_seminorm,
    is_inf,
    shilov_base,
)
from .errors import (
    NoContractionRadiusFound,
    NoConvergence,
    NonIntegralAtExtremePoint,
    NotCoprime,
    NotMonic,
    NotSeparable,
    NotSimpleRoot,
    ProductMismatch,
    RadiusBelowThreshold,
    RadiusTooSmall,
    ValuationUndefined,
)
from .normvalue import NormValue, nv_max, nv_sum
from .numbers import vp
from .padic import PadicApprox
from .polys import (
    Gauss,
    deg,
    fp_poly,
    hensel_multi_lift,
    is_monic,
    pderiv,
    pdivmod,
    peval,
    peval_gauss,
    poly,
    sylvester_resultant,
)
from .series_ring import (
    AnnulusSpec,
    LaurentPoly,
    norm_annulus,
    series_add,
    series_mul,
    series_scale,
    series_sub,
)

GRID = Fraction(1, 1 << 16)  # dyadic search grid for certified thresholds


def _as_poly(G) -> tuple:
    if isinstance(G, LaurentPoly):
        return G.poly_coeffs()
    return poly(G)


def global_threshold(G, V: BaseCompact) -> Fraction:
    """Smallest grid radius v certified to satisfy sum ||g_k|| v^(k-p) <= 1/2."""
    G = _as_poly(G)
    if not is_monic(G):
        raise NotMonic("threshold needs a monic divisor")
    p = deg(G)
    if p < 1:
        raise NotMonic("divisor must have positive degree")
    lower = [base_norm(c, V).hi for c in G[:-1]]
    if all(b == 0 for b in lower):
        return GRID

    def certified(v: Fraction) -> bool:
        return sum(b * v ** (k - p) for k, b in enumerate(lower)) <= Fraction(1, 2)

    hi = GRID
    for _ in range(300):
        if certified(hi):
            break
        hi *= 2
    else:
        raise NoContractionRadiusFound("threshold search exhausted")
    lo = hi / 2  # last failing value (or GRID/2 when GRID certifies)
    # binary search on the dyadic grid for the smallest certified multiple
    lo_idx = max(1, int(lo / GRID))
    hi_idx = int(hi / GRID)
    while lo_idx + 1 < hi_idx:
        mid = (lo_idx + hi_idx) // 2
        if certified(mid * GRID):
            hi_idx = mid
        else:
            lo_idx = mid
    if certified(lo_idx * GRID):
        return lo_idx * GRID
    return hi_idx * GRID


@dataclass(frozen=True)
class DivisionCert:
    """Certificate for one global division F = Q G + R at radius w."""

    v: Fraction
    w: Fraction
    normF: NormValue
    normQ: NormValue
    normR: NormValue
    q_bound_ok: bool
    r_bound_ok: bool

    @property
    def bounds_ok(self) -> bool:
        return self.q_bound_ok and self.r_bound_ok


def divide(F, G, V: BaseCompact, w):
    """Divide F by the monic polynomial G over the compact V at radius w.

    Returns (Q, R, cert) with F = Q G + R exactly (mod T^m when F carries a
    truncation modulus), deg R < deg G, and the certificate for the bounds
    ||Q||_{V,w} <= 2 v^(-p) ||F||_{V,w} and ||R||_{V,w} <= 2 ||F||_{V,w}.
    """
    w = Fraction(w)
    Gp = _as_poly(G)
    if not is_monic(Gp):
        raise NotMonic("global division needs a monic divisor")
    p = deg(Gp)
    v = global_threshold(Gp, V)
    if w < v:
        raise RadiusBelowThreshold(f"w = {w} below certified threshold {v}")
    if not isinstance(F, LaurentPoly):
        F = LaurentPoly.from_poly(poly(F))
    if F.has_negative_support():
        raise ValueError("global division expects nonnegative support")
    mod = F.trunc_mod
    q, r = pdivmod(F.poly_coeffs(), Gp)
    Q = LaurentPoly.from_poly(q, mod)
    R = LaurentPoly.from_poly(r, mod)
    A = AnnulusSpec(V, Fraction(0), w)
    normF = norm_annulus(F, A)
    normQ = norm_annulus(Q, A)
    normR = norm_annulus(R, A)
    factor = NormValue.of(2 * v ** (-p))
    cert = DivisionCert(
        v=v,
        w=w,
        normF=normF,
        normQ=normQ,
        normR=normR,
        q_bound_ok=normQ.le(factor * normF),
        r_bound_ok=normR.le(NormValue.of(2) * normF),
    )
    return Q, R, cert


# -- local (series) division --------------------------------------------------


@dataclass(frozen=True)
class LocalDivisionCert:
    """Contraction data for the fixed-point division at the chosen radius."""

    radius: Fraction
    epsilon: NormValue  # certified bound on ||A - I|| at the radius
    residuals: tuple  # per-iteration norms of F - (Q_n G + R_n)


def _anchor_point(V: BaseCompact) -> BasePoint:
    """The distinguished base point at which local reductions happen.

    A segment reaching the end of a finite branch anchors at the extreme
    point (the compact is then a neighborhood of it); otherwise a compact
    containing a_0 anchors there, and a proper internal segment anchors at
    its left endpoint.
    """
    if V.kind == "segment" and is_inf(V.v):
        return BasePoint.extreme(V.place.prime)
    if V.contains_central():
        return BasePoint.central()
    return BasePoint.branch(V.place, V.u)


def _reduction_valuation(G: LaurentPoly, b: BasePoint) -> Optional[int]:
    """T-adic valuation of the reduction of G at the base point b."""
    cat = classify_base_point(b)
    for k in G.support():
        c = G.coeff(k)
        if cat == "extreme":
            if vp(c, b.place.prime) < 0:
                raise NonIntegralAtExtremePoint(f"coefficient {c} at T^{k}")
            if vp(c, b.place.prime) == 0:
                return k
        else:
            if c != 0:
                return k
    return None


def divide_local_series(F: LaurentPoly, G: LaurentPoly, p: int, m: int, ctx: AnnulusSpec):
    """Weierstrass division of truncated series: F = Q G + R mod T^m, deg R < p.

    G's reduction at the anchor point of ctx.V must have T-adic valuation
    exactly p.  Two exactly-representable regimes are supported: the low
    coefficients of G vanish identically (fixed-point iteration, recorded
    contraction certificate), or G is a polynomial of degree p whose low
    coefficients vanish at the anchor (euclidean division).  Returns
    (Q, R, cert).
    """
    if m < 1:
        raise ValueError("truncation order must be positive")
    if F.has_negative_support() or G.has_negative_support():
        raise ValueError("local division expects nonnegative support")
    b = _anchor_point(ctx.V)
    val = _reduction_valuation(G, b)
    if val is None:
        raise ValuationUndefined("G reduces to 0 at the anchor point")
    if val != p:
        raise ValuationUndefined(f"reduction has valuation {val}, expected {p}")
    F = F.with_mod(m)
    low_zero = all(G.coeff(k) == 0 for k in range(p))
    if low_zero:
        return _divide_by_iteration(F, G, p, m, ctx)
    if G.degree() == p:
        q, r = pdivmod(F.poly_coeffs(), G.poly_coeffs())
        Q, R = LaurentPoly.from_poly(q, m), LaurentPoly.from_poly(r, m)
        cert = _contraction_cert(G, p, ctx, residuals=())
        return Q, R, cert
    raise ValuationUndefined(
        "G has nonvanishing low coefficients and degree > p; the quotient "
        "coefficients are not rational and cannot be represented exactly"
    )


def _split_at(phi: LaurentPoly, p: int):
    """phi = alpha * T^p + beta with beta of degree < p."""
    alpha = LaurentPoly({k - p: c for k, c in phi.coeffs.items() if k >= p},
                        None if phi.trunc_mod is None else phi.trunc_mod - p)
    beta = LaurentPoly({k: c for k, c in phi.coeffs.items() if k < p})
    return alpha, beta


def _contraction_cert(G: LaurentPoly, p: int, ctx: AnnulusSpec, residuals) -> LocalDivisionCert:
    """Search a dyadic radius where ||A - I|| <= ||G/u - T^p|| w^(-p) < 1."""
    u = G.coeff(p)
    B = series_sub(series_scale(1 / u, G), LaurentPoly.monomial(p))
    if not B:
        return LocalDivisionCert(Fraction(1), NormValue.of(0), tuple(residuals))

    def eps_at(w: Fraction):
        try:
            return norm_annulus(B, AnnulusSpec(ctx.V, Fraction(0), w)) * NormValue.of(
                w ** (-p)
            )
        except Exception:
            return None

    # scan dyadic radii outward from 1: small radii win when B has high
    # valuation, large radii when the low coefficients are small in norm
    for j in range(600):
        for w in {Fraction(2) ** j, Fraction(2) ** -j}:
            eps = eps_at(w)
            if eps is not None and eps.lt(1):
                return LocalDivisionCert(w, eps, tuple(residuals))
    raise NoContractionRadiusFound("no dyadic radius certifies the contraction")


def _divide_by_iteration(F: LaurentPoly, G: LaurentPoly, p: int, m: int, ctx: AnnulusSpec):
    u = G.coeff(p)
    Gn = series_scale(1 / u, G).with_mod(m)  # monic-at-T^p normalization
    B = series_sub(Gn, LaurentPoly.monomial(p, trunc_mod=m)).with_mod(m)
    cert_radius = _contraction_cert(G, p, ctx, residuals=())
    phi = F
    residuals = []
    A_of = lambda f: series_add(f, series_mul(_split_at(f, p)[0], B).with_mod(m))
    for _ in range(m + 2):
        res = series_sub(F, A_of(phi)).with_mod(m)
        residuals.append(
            norm_annulus(res, AnnulusSpec(ctx.V, Fraction(0), cert_radius.radius))
        )
        if not res:
            break
        phi = series_add(phi, res)
    else:
        raise NoConvergence("fixed point not reached")  # pragma: no cover
    alpha, beta = _split_at(phi, p)
    Q = series_scale(1 / u, alpha)  # naturally known mod T^(m - p)
    R = beta
    cert = LocalDivisionCert(cert_radius.radius, cert_radius.epsilon, tuple(residuals))
    return Q, R, cert


def prepare(G: LaurentPoly, p: int, m: int, ctx: AnnulusSpec):
    """Weierstrass preparation: G = E * Omega mod T^m with Omega distinguished.

    Omega = T^p - R where R is the remainder of dividing T^p by G; E is the
    inverse of the quotient.  Returns (E, Omega, cert).
    """
    Tp = LaurentPoly.monomial(p, trunc_mod=m + p)
    Q, R, cert = divide_local_series(Tp, G.with_mod(m + p), p, m + p, ctx)
    Omega = series_sub(LaurentPoly.monomial(p), R)
    c0 = Q.coeff(0)
    if c0 == 0:
        raise ValuationUndefined("quotient is not a unit; preparation fails")
    E = _invert_series(Q, m)
    return E, Omega, cert


def _invert_series(f: LaurentPoly, m: int) -> LaurentPoly:
    """Exact inverse mod T^m of a series with nonzero constant term."""
    c0 = f.coeff(0)
    out = {0: 1 / c0}
    for k in range(1, m):
        acc = Fraction(0)
        for j, c in f.coeffs.items():
            if 0 < j <= k:
                prev = out.get(k - j)
                if prev is not None:
                    acc += c * prev
        if acc:
            out[k] = -acc / c0
    return LaurentPoly(out, m)


# -- Hensel lifting -----------------------------------------------------------


@dataclass(frozen=True)
class HenselReport:
    """Residual-gauge trace of a Newton/Hensel run (valuations per step)."""

    gauges: tuple


def hensel_lift_root(P, f0, target: int, ctx: Optional[AnnulusSpec] = None):
    """Refine a simple approximate root of P to the target precision.

    Two coefficient rings are supported.  If f0 is a PadicApprox, P is a
    polynomial over Q with p-integral coefficients and target is the p-adic
    precision N.  If f0 is a LaurentPoly, P is a polynomial in S whose
    coefficients are (Laurent) series and target is the T-adic truncation
    order m.  Returns (root, report) with the per-step residual gauges.
    """
    if isinstance(f0, PadicApprox):
        return _hensel_padic(P, f0, target)
    if isinstance(f0, LaurentPoly):
        return _hensel_series(P, f0, target)
    raise TypeError("f0 must be a PadicApprox or a LaurentPoly")


def _eval_int_mod(P, x: int, p: int, mod: int) -> int:
    """P(x) mod ``mod`` for a poly with p-integral rational coefficients."""
    from .numbers import invmod

    acc = 0
    for c in reversed(P):
        c = Fraction(c)
        cres = c.numerator * invmod(c.denominator, mod) % mod
        acc = (acc * x + cres) % mod
    return acc


def _val_mod(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    from .numbers import vp_int

    return min(vp_int(n, p), cap)


def _hensel_padic(P, f0: PadicApprox, N: int):
    from .numbers import invmod

    p = f0.p
    Pq = poly(P)
    for c in Pq:
        if c != 0 and vp(c, p) < 0:
            raise ValueError(f"coefficient {c} is not {p}-integral")
    dP = pderiv(Pq)
    df_cap = f0.N + 4
    v_df = _val_mod(_eval_int_mod(dP, f0.residue, p, p ** df_cap), p, df_cap)
    if v_df >= df_cap:
        raise NotSimpleRoot("P'(f0) vanishes at the seed precision")
    steps_cap = N.bit_length() + 8
    internal = N + v_df * (steps_cap + 2) + 4
    mod = p ** internal
    x = f0.residue
    v_f = _val_mod(_eval_int_mod(Pq, x, p, mod), p, internal)
    if not v_f > 2 * v_df:
        raise NotSimpleRoot(
            f"need v(P(f0)) > 2 v(P'(f0)); got {v_f} vs 2*{v_df}"
        )
    gauges = [v_f]
    for _ in range(steps_cap):
        if gauges[-1] >= N:
            break
        fx = _eval_int_mod(Pq, x, p, mod)
        dfx = _eval_int_mod(dP, x, p, mod)
        if _val_mod(dfx, p, internal) != v_df:
            raise NotSimpleRoot("derivative valuation drifted during lifting")
        unit = dfx // p ** v_df
        delta = fx // p ** v_df * invmod(unit, mod) % mod
        x = (x - delta) % mod
        gauges.append(_val_mod(_eval_int_mod(Pq, x, p, mod), p, internal))
    if gauges[-1] < N:
        raise NoConvergence("residual valuation did not reach the target")
    return PadicApprox(p, N, x), HenselReport(tuple(gauges))


def _series_poly(P) -> list:
    """Coerce a polynomial in S with series coefficients."""
    out = []
    for c in P:
        if isinstance(c, LaurentPoly):
            out.append(c)
        else:
            out.append(LaurentPoly({0: Fraction(c)}) if Fraction(c) else LaurentPoly.zero())
    while out and not out[-1]:
        out.pop()
    return out


def _series_poly_eval(P, x: LaurentPoly, m: int) -> LaurentPoly:
    acc = LaurentPoly.zero(m)
    for c in reversed(P):
        acc = series_add(series_mul(acc, x), c.with_mod(m)).with_mod(m)
    return acc


def _series_poly_deriv(P) -> list:
    return [series_scale(k, c) for k, c in enumerate(P)][1:]


def _series_gauge(f: LaurentPoly, m: int) -> int:
    """T-adic valuation of a truncated series (m when it vanishes mod T^m)."""
    mi = f.min_index()
    return m if mi is None else min(mi, m)


def _hensel_series(P, f0: LaurentPoly, m: int):
    P = _series_poly(P)
    dP = _series_poly_deriv(P)
    if f0.has_negative_support():
        raise ValueError("series roots must have nonnegative support")
    x = f0.with_mod(m)
    r0 = _series_poly_eval(P, x, m)
    d0 = _series_poly_eval(dP, x, m)
    v_f = _series_gauge(r0, m)
    if d0.coeff(0) == 0:
        raise NotSimpleRoot("P'(f0) is not a unit at T = 0")
    if v_f < 1:
        raise NotSimpleRoot("P(f0) must vanish at T = 0")
    gauges = [v_f]
    for _ in range(m.bit_length() + 8):
        if gauges[-1] >= m:
            break
        fx = _series_poly_eval(P, x, m)
        dfx = _series_poly_eval(dP, x, m)
        inv = _invert_series(dfx, m)
        x = series_sub(x, series_mul(fx, inv).with_mod(m)).with_mod(m)
        gauges.append(_series_gauge(_series_poly_eval(P, x, m), m))
    if gauges[-1] < m:
        raise NoConvergence("residual order did not reach the target")
    return x, HenselReport(tuple(gauges))


def hensel_factor_lift(G, factors, p: int, N: int):
    """Lift a pairwise-coprime monic factorization of G mod p to mod p^N.

    G is a monic integer polynomial, the seed factors are monic mod p and
    multiply to G mod p.  Returns the lifted monic factors with coefficients
    reduced mod p^N; each is congruent to its seed mod p and the product is
    congruent to G mod p^N.
    """
    Gp = poly(G)
    if not is_monic(Gp):
        raise NotMonic("factor lifting needs a monic G")
    if any(Fraction(c).denominator != 1 for c in Gp):
        raise ValueError("G must have integer coefficients")
    Gint = tuple(int(c) for c in Gp)
    seeds = [fp_poly(f, p) for f in factors]
    for f in seeds:
        if not f or f[-1] != 1:
            raise NotMonic("seed factors must be monic mod p")
    for i in range(len(seeds)):
        for j in range(i + 1, len(seeds)):
            from .polys import fp_gcd

            if deg(fp_gcd(seeds[i], seeds[j], p)) > 0:
                raise NotCoprime(f"factors {i} and {j} share a root mod p")
    lifted = hensel_multi_lift(Gint, seeds, p, N)
    modN = p ** N
    prod = (1,)
    from .polys import _zp_mul

    for f in lifted:
        prod = _zp_mul(prod, f, modN)
    target = tuple(c % modN for c in Gint)
    while target and target[-1] == 0:
        target = target[:-1]
    if prod != target:
        raise ProductMismatch("lifted product does not match G mod p^N")
    return lifted


def resultant(P, Q) -> Fraction:
    """Res(P, Q) with the convention Res(f,g) = lc(f)^deg(g) prod g(roots f)."""
    return sylvester_resultant(poly(P), poly(Q))


@dataclass(frozen=True)
class LagrangeBoundReport:
    lhs: NormValue
    D: NormValue
    rhs: NormValue

    @property
    def holds(self) -> bool:
        return self.lhs.le(self.rhs)


def lagrange_bound_report(f, g, roots, r, place) -> LagrangeBoundReport:
    """The interpolation bound sum |a_i| r^i <= D max |f(alpha_i)|.

    D = d (2r)^(d^2-d) / |Res(g, g')| at the chosen place; g must be monic
    separable of degree d with the supplied exact roots, and r must dominate
    every |alpha_i|.  Roots may be Gaussian rationals at the archimedean
    place, rational elsewhere.
    """
    from .base_space import abs_at_place

    f = poly(f)
    g = poly(g)
    r = Fraction(r)
    d = deg(g)
    if not is_monic(g):
        raise NotMonic("g must be monic")
    if deg(f) >= d:
        raise ValueError("f must have degree < deg g")
    if len(roots) != d:
        raise ValueError("need exactly deg g roots")
    res = sylvester_resultant(g, pderiv(g))
    if res == 0:
        raise NotSeparable("Res(g, g') = 0")
    roots = [z if isinstance(z, Gauss) else Gauss(z) for z in roots]
    finite = place.is_finite
    if finite and any(z.im != 0 for z in roots):
        raise ValueError("finite places need rational roots")
    # verify the supplied roots: g = prod (T - alpha_i) over the Gaussians
    acc = [Gauss(1)]
    for z in roots:
        nxt = [Gauss(0)] * (len(acc) + 1)
        for i, c in enumerate(acc):
            nxt[i + 1] += c
            nxt[i] += c * Gauss(-z.re, -z.im)
        acc = nxt
    if any(Gauss(c) != acc[i] for i, c in enumerate(g)):
        raise ValueError("supplied roots do not multiply back to g")

    def root_abs(z: Gauss) -> NormValue:
        if finite:
            return NormValue.of(abs_at_place(z.re, place))
        return NormValue.of(z.norm2()).pow_rational(Fraction(1, 2))

    for z in roots:
        if not root_abs(z).le(NormValue.of(r)):
            raise RadiusTooSmall(f"r = {r} below |root| for {z}")
    lhs = nv_sum(
        NormValue.of(abs_at_place(c, place) * r ** i) for i, c in enumerate(f) if c
    )
    Dv = NormValue.of(Fraction(d) * (2 * r) ** (d * d - d) / abs_at_place(res, place))
    vals = []
    for z in roots:
        if z.im == 0:
            fv = peval(f, z.re)
            vals.append(NormValue.of(abs_at_place(fv, place)))
        else:
            fv = peval_gauss(f, z)
            vals.append(NormValue.of(fv.norm2()).pow_rational(Fraction(1, 2)))
    rhs = Dv * nv_max(vals)
    return LagrangeBoundReport(lhs=lhs, D=Dv, rhs=rhs)


# -- residual norms on the finite cover A[T]/(G) -------------------------------


@dataclass(frozen=True)
class QuotientRing:
    """B(U)[T]/(G) carried with the radius w >= the division threshold."""

    G: tuple
    U: BaseCompact
    w: Fraction

    def __post_init__(self):
        G = poly(self.G)
        if not is_monic(G):
            raise NotMonic("quotient ring needs a monic modulus")
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "w", Fraction(self.w))
        if self.w < global_threshold(G, self.U):
            raise RadiusBelowThreshold(
                f"w = {self.w} below the division threshold of G"
            )

    @property
    def degree(self) -> int:
        return deg(self.G)


@dataclass(frozen=True)
class ResidualSandwich:
    div_norm: NormValue
    upper: NormValue
    C0: Fraction  # division constant bounding the sandwich width


def residual_norm_sandwich(qr: QuotientRing, F) -> ResidualSandwich:
    """Two-sided control of the residual norm of F in B(U)[T]/(G).

    div_norm is the coefficient-max norm of the canonical representative of
    degree < p (computed by division); upper = ||F_0||_{U,w} bounds the
    residual norm from above, and upper / C0 bounds it from below with
    C0 = 2, the division constant.
    """
    if not isinstance(F, LaurentPoly):
        F = LaurentPoly.from_poly(poly(F))
    _, F0, _ = divide(F, qr.G, qr.U, qr.w)
    div_norm = nv_max(base_norm(c, qr.U) for c in F0.coeffs.values()) if F0 else NormValue.of(0)
    upper = norm_annulus(F0, AnnulusSpec(qr.U, Fraction(0), qr.w))
    return ResidualSandwich(div_norm=div_norm, upper=upper, C0=Fraction(2))


@dataclass(frozen=True)
class ConditionRGReport:
    holds: bool
    gamma: tuple
    m_U: NormValue


def condition_RG_check(U: BaseCompact, G) -> ConditionRGReport:
    """Is |Res(G, G')| bounded below by a positive constant on the Shilov
    boundary of U?"""
    G = poly(G)
    rho = sylvester_resultant(G, pderiv(G))
    gamma = tuple(shilov_base(U))
    if rho == 0:
        return ConditionRGReport(False, gamma, NormValue.of(0))
    vals = []
    for x in gamma:
        try:
            vals.append(eval_base_seminorm(rho, x))
        except NonIntegralAtExtremePoint:
            continue  # |rho| exceeds 1 there; never the minimum over gamma
    if not vals:
        return ConditionRGReport(True, gamma, NormValue.of(1))
    m_U = vals[0]
    for v in vals[1:]:
        m_U = m_U.min_with(v)
    return ConditionRGReport(m_U.gt(0), gamma, m_U)
