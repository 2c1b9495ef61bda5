#!/usr/bin/env python3
"""Weierstrass division with certified constants, preparation and Hensel."""

from fractions import Fraction

from arithline import (
    AnnulusSpec,
    BaseCompact,
    LaurentPoly,
    PadicApprox,
    Place,
    QuotientRing,
    condition_RG_check,
    divide,
    divide_local_series,
    global_threshold,
    hensel_factor_lift,
    hensel_lift_root,
    lagrange_bound_report,
    prepare,
    residual_norm_sandwich,
    resultant,
)

MZ = BaseCompact.whole_space()

print("== the certified division radius ==")
G = [2, 2, 1]  # T^2 + 2T + 2
v = global_threshold(G, MZ)
print("threshold v for T^2+2T+2:", v, "~", float(v))
print("check: 2/v^2 + 2/v =", float(Fraction(2) / v ** 2 + Fraction(2) / v), "<= 1/2")

print()
print("== division with norm certificates ==")
Q, R, cert = divide(LaurentPoly.from_poly([0, 0, 0, 1]), G, MZ, 5)
print("T^3 = (T - 2)(T^2 + 2T + 2) + (2T + 4):", Q, R)
print("||Q|| =", cert.normQ, "<= 2 v^-2 ||F|| :", cert.q_bound_ok)
print("||R|| =", cert.normR, "<= 2 ||F||      :", cert.r_bound_ok)

print()
print("== local division of truncated series (fixed-point operator) ==")
CENTER = AnnulusSpec(BaseCompact.central_point(), 0, Fraction(1, 2))
F = LaurentPoly({2: 1}, 8)
Gs = LaurentPoly({2: 1, 3: 1}, 8)
Q2, R2, cert2 = divide_local_series(F, Gs, 2, 8, CENTER)
print("T^2 / (T^2 + T^3):", Q2, " remainder:", R2)
print("contraction eps =", cert2.epsilon, " residual norms:", [str(r.hi) for r in cert2.residuals])

print()
print("== preparation: G = E * Omega ==")
E, Om, _ = prepare(LaurentPoly({1: 1, 2: 2}), 1, 6, CENTER)
print("T + 2T^2 = (", E, ") * (", Om, ")")

print()
print("== Hensel lifting, p-adic and series ==")
root7, rep7 = hensel_lift_root([-2, 0, 1], PadicApprox(7, 1, 3), 5)
print("sqrt(2) in Z_7 to 7^5:", root7, " residual valuations:", rep7.gauges)
P = [LaurentPoly({0: -1, 1: -1}), LaurentPoly.zero(), LaurentPoly.one()]
sq, _ = hensel_lift_root(P, LaurentPoly({0: 1}), 8)
print("sqrt(1+T) mod T^8:", sq)
print("factor lift of T^2 + 1 mod 5 -> mod 25:", hensel_factor_lift([1, 0, 1], [[-2, 1], [2, 1]], 5, 2))

print()
print("== resultants, interpolation bound, finite covers ==")
print("Res(T^2 - 1, 2T) =", resultant([-1, 0, 1], [0, 2]))
rep = lagrange_bound_report([0, 1], [-1, 0, 1], [1, -1], 1, Place.infinite())
print("lagrange: lhs =", rep.lhs, " D =", rep.D, " rhs =", rep.rhs, " holds:", rep.holds)
qr = QuotientRing((2, 2, 1), MZ, 5)
rs = residual_norm_sandwich(qr, [0, 0, 1])
print("residual sandwich for class of T^2: coeff-max =", rs.div_norm, " upper =", rs.upper)
rg = condition_RG_check(BaseCompact.segment(Place.finite(2), 1, float("inf")), [1, 0, 1])
print("condition (R_G) for T^2+1 on the 2-adic tail:", rg.holds, " lower bound m_U =", rg.m_U)
