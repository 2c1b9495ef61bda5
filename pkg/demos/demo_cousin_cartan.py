#!/usr/bin/env python3
"""Cousin splittings and the Cartan matrix factorization, with certificates."""

from fractions import Fraction

from arithline import (
    LaurentPoly,
    Place,
    SeriesMatrix,
    SplitSystem,
    cartan_factorize,
    matrix_norm,
    neumann_inverse,
    runge_approximate,
    split_laurent_sides,
    split_rational,
    split_series_arith,
)

print("== splitting a rational across a finite place ==")
sys2 = SplitSystem(Place.finite(2), 1, (Fraction(1, 2), 2))
minus, plus, cert = split_rational(Fraction(5, 6), sys2)
print("5/6 = (", minus, ") - (", plus, ")")
print("norms:", cert.norm_input, cert.norm_minus, cert.norm_plus, " D-bounds hold:", cert.bounds_ok)

print()
print("== the archimedean split uses the integer lattice ==")
sysi = SplitSystem(Place.infinite(), Fraction(1, 2))
minus, plus, cert = split_rational(Fraction(7, 3), sysi)
print("7/3 = (", minus, ") - (", plus, "),  D =", cert.D, " bounds:", cert.bounds_ok)

print()
print("== Laurent splittings ==")
f = LaurentPoly({-1: 2, 0: 3, 2: 1})
print("index split of 2T^-1 + 3 + T^2:", split_laurent_sides(f))
fm, fp, cert = split_series_arith(LaurentPoly({0: Fraction(5, 6), -1: Fraction(1, 10)}), sys2)
print("coefficientwise split:", fm, "|", fp, " bounds:", cert.bounds_ok)

print()
print("== Runge approximation across the split ==")
fpow, sps, tps, rcert = runge_approximate(
    [LaurentPoly({1: Fraction(1, 6)})], [LaurentPoly({-1: Fraction(1, 5)})], sys2, Fraction(1, 64)
)
print("f = ", fpow, " s' =", sps[0], " t' =", tps[0])
print("product defects below delta:", rcert.ok)

print()
print("== Neumann inversion of near-identity matrices ==")
A = sys2.annulus_on(sys2.overlap_compact())
a = SeriesMatrix([[LaurentPoly({0: 1, 1: 16})]])
b = neumann_inverse(a, A, 5)
print("(1 + 16T)^-1 mod T^5 =", b.entries[0][0], " norm:", matrix_norm(b, A))

print()
print("== Cartan factorization ==")
narrow = SplitSystem(Place.finite(2), 1, (Fraction(1, 32), Fraction(1, 16)))
entries = [[LaurentPoly({0: 1, 2: Fraction(5, 6), 3: Fraction(7, 10)})]]
a = SeriesMatrix(entries)
print("||a - I|| =", matrix_norm(a.sub(SeriesMatrix.identity(1)), narrow.annulus_on(narrow.overlap_compact())))
res = cartan_factorize(a, narrow, 60, Fraction(1, 2 ** 40))
print("iterations:", res.iterations, " residual <= 2^-40:", res.residual.hi <= Fraction(1, 2 ** 40))
print("sides certified:", res.sides_ok, " 4D bounds:", res.bound_4D_ok, " geometric decay:", res.decay_ok)
print("c^- =", res.c_minus.entries[0][0])
print("c^+ =", res.c_plus.entries[0][0])
print("recorded norms:", [float(x) for x in res.btilde_norms])
