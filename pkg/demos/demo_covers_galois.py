#!/usr/bin/env python3
"""Cyclic covers, binomial root series, Eisenstein witnesses, group gluing."""

from arithline import (
    CoverDescriptor,
    LaurentPoly,
    Place,
    binomial_root_series,
    cyclic_cover_split,
    eisenstein_witness,
    find_prime_congruent,
    group_cover_data,
    mu_homomorphism,
    primitive_root_of_unity,
    standard_group_tables,
)

print("== primes and roots of unity ==")
for n in (2, 3, 4, 5, 8):
    print(f"least prime = 1 mod {n}:", find_prime_congruent(n))
print("primitive cube root of 1 mod 7:   ", primitive_root_of_unity(3, 7, 1))
print("lifted to 7^2 (Hensel):           ", primitive_root_of_unity(3, 7, 2))

print()
print("== the binomial n-th root of 1 + Z ==")
g, report = binomial_root_series(3, 6, p=7)
print("g =", g)
print("g^3 = 1 + Z mod Z^6:", report.power_identity_ok, " 7-integral coefficients:", report.integral_at_p)

print()
print("== the cyclic cover S^n = p^n + T splits through g ==")
for n, p in ((2, 3), (3, 7), (4, 5)):
    desc = CoverDescriptor.build(n, p, 3, max(6, 2 * n))
    rep = cyclic_cover_split(desc)
    print(f"(n, p) = ({n}, {p}): defects zero at precision:", rep.zero_at_precision)

print()
print("== Eisenstein witnesses from Hensel-lifted series ==")
P = [LaurentPoly({0: -1, 1: -1}), LaurentPoly.zero(), LaurentPoly.one()]  # S^2 - (1 + T)
w = eisenstein_witness(P, LaurentPoly({0: 1}), 8, [Place.infinite(), Place.finite(2), Place.finite(3)])
print("truncated sqrt(1+T):", w.root)
print("denominator lcm N =", w.N, "(a power of two)")
for place, r in w.radii.items():
    print("radius witness at", place, ">=", r, "~", float(r))

print()
print("== group gluing data ==")
tables = standard_group_tables()
for name in ("Z4", "S3", "Q8"):
    G = tables[name]
    rep = mu_homomorphism(G)
    print(f"{name}: left translation is an injective homomorphism:", rep.injective and rep.homomorphism)
S3 = tables["S3"]
three_cycle = next(i for i in range(1, 7) if S3.order_of(i) == 3)
data = group_cover_data(S3, three_cycle)
print("S3, a 3-cycle: order =", data.n_i, " cosets =", data.d_i, " reps =", data.reps)
print("sigma =", data.sigma)
