#!/usr/bin/env python3
"""Points of the affine line, the flow, and norms on relative annuli."""

from fractions import Fraction

from arithline import (
    AnnulusSpec,
    BaseCompact,
    BasePoint,
    LaurentPoly,
    LinePoint,
    Place,
    eval_line_seminorm,
    flow,
    invert_unit,
    norm_annulus,
    shilov_annulus,
    uniform_norm_annulus,
)

print("== disk points over a p-adic branch point ==")
x = LinePoint.disk(BasePoint.finite(2, 1), 0, 1)  # eta_{0,1} over a_2^1
print("|T^2 + 2T + 4| at eta_{0,1} =", eval_line_seminorm([4, 2, 1], x))
# the point only depends on the disk: recentre within the radius
y = LinePoint.disk(BasePoint.finite(2, 1), 8, 1)
print("same at eta_{8,1}          =", eval_line_seminorm([4, 2, 1], y))

print()
print("== trivially valued fibers (central and extreme) ==")
c = LinePoint.triv_closed(BasePoint.central(), (0, 1), Fraction(1, 2))  # eta_{T,1/2}
print("|T^3 (T+1)| at eta_{T,1/2} over a_0 =", eval_line_seminorm([0, 0, 0, 1, 1], c))
e = LinePoint.triv_closed(BasePoint.extreme(2), (0, 1), Fraction(1, 2))
print("|2T + T^2|  at eta_{T,1/2} over ~a_2 =", eval_line_seminorm([0, 2, 1], e), "(reduce mod 2 first)")

print()
print("== the flow x -> x^eps ==")
x0 = LinePoint.disk(BasePoint.finite(2, 1), 0, Fraction(1, 2))
x2 = flow(x0, 2)
print("eta_{0,1/2} over a_2^1  --flow 2-->  radius", x2.fiber.r, "over", x2.base)
print("|T - 2| before:", eval_line_seminorm([-2, 1], x0), " after:", eval_line_seminorm([-2, 1], x2))

print()
print("== annulus norms ==")
A = AnnulusSpec(BaseCompact.segment(Place.finite(2), 1, 1), Fraction(1, 2), 2)
f = LaurentPoly({-1: 2, 0: 3, 2: 1})  # 2 T^-1 + 3 + T^2
print("sum norm      ||f||_{1/2,2} =", norm_annulus(f, A))
print("spectral norm               =", uniform_norm_annulus(f, A))
print("Shilov points of the annulus:", shilov_annulus(A))

print()
print("== inverting units by certified geometric series ==")
disk = AnnulusSpec(BaseCompact.central_point(), 0, Fraction(1, 2))
g = invert_unit(LaurentPoly({0: 2, 1: 1}), disk, 6)
print("1/(2 + T) mod T^6 =", g)
