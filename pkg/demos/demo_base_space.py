#!/usr/bin/env python3
"""Tour of the base space: places, points, seminorms, compacts, Shilov data.

The base space is a tree: one branch per prime plus an archimedean branch,
all glued at the central point a_0 carrying the trivial absolute value.
Every point is an explicit seminorm we can evaluate exactly.
"""

from fractions import Fraction

from arithline import (
    BaseCompact,
    BasePoint,
    Place,
    base_norm,
    classify_base_point,
    eval_base_seminorm,
    product_formula_defect,
    ring_label,
    shilov_base,
)

INF = float("inf")

print("== evaluating seminorms ==")
print("|12| at a_2^1      =", eval_base_seminorm(12, BasePoint.finite(2, 1)))
print("|12| at a_2^3      =", eval_base_seminorm(12, BasePoint.finite(2, 3)))
print("|12| at a_0        =", eval_base_seminorm(12, BasePoint.central()))
print("|10| at extreme(5) =", eval_base_seminorm(10, BasePoint.extreme(5)))

# fractional exponents produce certified enclosures instead of floats
nv = eval_base_seminorm(-7, BasePoint.arch(Fraction(1, 2)))
print("|-7| at a_inf^(1/2) is in [", float(nv.lo), ",", float(nv.hi), "]")
print("enclosure width <= 2^-64:", nv.width() <= Fraction(1, 2 ** 64))

print()
print("== the product formula, exactly ==")
for f in (12, Fraction(-5, 6), Fraction(355, 113)):
    print(f"prod over places of |{f}| =", product_formula_defect(f))

print()
print("== point taxonomy ==")
for x in (BasePoint.central(), BasePoint.finite(3, 2), BasePoint.extreme(7)):
    print(x, "is", classify_base_point(x))

print()
print("== compacts, their rings and Shilov boundaries ==")
examples = [
    ("closed 2-adic tail      ", BaseCompact.segment(Place.finite(2), 1, INF)),
    ("2-adic segment          ", BaseCompact.segment(Place.finite(2), Fraction(1, 2), 2)),
    ("whole space             ", BaseCompact.whole_space()),
    ("star cut at 2           ", BaseCompact.star({Place.finite(2): Fraction(1, 2)})),
    ("three-cut star          ", BaseCompact.star({Place.finite(2): 1, Place.finite(3): 1, Place.infinite(): 1})),
]
for name, V in examples:
    print(name, "ring:", ring_label(V), " Shilov:", shilov_base(V))

print()
print("== norms are endpoint maxima ==")
V = BaseCompact.star({Place.finite(2): 1, Place.finite(3): 1, Place.infinite(): 1})
f = Fraction(5, 6)
print(f"||{f}||_V =", base_norm(f, V), " (max of |.|_2 = 2, |.|_3 = 3, |.|_inf = 5/6, |.|_0 = 1)")
