import random
from fractions import Fraction

import pytest

from arithline import (
    AnnulusSpec,
    BaseCompact,
    LaurentPoly,
    NormValue,
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
from arithline.series_ring import norm_annulus, series_mul, series_sub
from arithline.errors import EpsilonTooLarge, NormTooLarge
from arithline.numbers import vp

from oracles import padic_abs


def finite_sys(p=2, u=1, annulus=None):
    return SplitSystem(Place.finite(p), u, annulus)


def test_split_constants():
    assert finite_sys().C == Fraction(1, 2)
    assert finite_sys().D == Fraction(3, 2)
    arch = SplitSystem(Place.infinite(), Fraction(1, 2))
    assert arch.D == Fraction(5, 2)


def test_split_rational_examples():
    minus, plus, cert = split_rational(Fraction(5, 6), finite_sys())
    assert (minus, plus) == (Fraction(1, 3), Fraction(-1, 2))
    assert cert.norm_input == NormValue.of(2)
    assert cert.norm_minus == NormValue.of(1)
    assert cert.norm_plus == NormValue.of(2)
    assert cert.bounds_ok  # both <= 3 = D * 2
    assert split_rational(7, finite_sys())[:2] == (Fraction(7), Fraction(0))
    minus2, plus2, cert2 = split_rational(Fraction(7, 3), SplitSystem(Place.infinite(), Fraction(1, 2)))
    assert plus2 == -2 and minus2 == Fraction(1, 3)
    assert cert2.bounds_ok


def test_split_rational_random():
    rng = random.Random(89)
    for _ in range(500):
        p = rng.choice((2, 3, 5))
        sys = finite_sys(p, rng.randint(1, 3))
        a = Fraction(rng.randint(-10 ** 5, 10 ** 5) or 1, rng.randint(1, 10 ** 5))
        minus, plus, cert = split_rational(a, sys)
        assert minus - plus == a  # exact reconstruction
        assert vp(minus, p) >= 0 if minus else True  # minus-side membership
        d = plus.denominator
        while d % p == 0:
            d //= p
        assert d == 1  # plus side lives in Z[1/p]
        assert cert.bounds_ok
    for _ in range(300):
        sys = SplitSystem(Place.infinite(), Fraction(rng.randint(1, 3), 4))
        a = Fraction(rng.randint(-10 ** 5, 10 ** 5) or 1, rng.randint(1, 10 ** 5))
        minus, plus, cert = split_rational(a, sys)
        assert minus - plus == a
        assert plus.denominator == 1  # plus side is Z at the archimedean place
        assert cert.bounds_ok


def test_split_laurent_sides():
    f = LaurentPoly({-1: 2, 0: 3, 2: 1})
    nonneg, neg = split_laurent_sides(f)
    assert nonneg == LaurentPoly({0: 3, 2: 1})
    assert neg == LaurentPoly({-1: 2})
    g = LaurentPoly({0: 1, 3: -2})
    assert split_laurent_sides(g) == (g, LaurentPoly.zero())
    # norms only move down across the split
    V = BaseCompact.segment(Place.finite(2), 1, 1)
    u, v, w = Fraction(1, 2), Fraction(2), Fraction(4)
    full = LaurentPoly({k: 1 for k in range(-2, 3)})
    nn, ng = split_laurent_sides(full)
    assert norm_annulus(nn, AnnulusSpec(V, 0, v)).hi <= norm_annulus(full, AnnulusSpec(V, u, v)).hi
    assert norm_annulus(ng, AnnulusSpec(V, u, w)).hi <= norm_annulus(full, AnnulusSpec(V, u, v)).hi


def test_split_series_examples():
    sys = finite_sys(2, 1, (Fraction(1, 2), 2))
    f_int = LaurentPoly({0: 4, 2: -3})
    fm, fp, cert = split_series_arith(f_int, sys)
    assert fm == f_int and not fp and cert.bounds_ok
    fm2, fp2, _ = split_series_arith(LaurentPoly({1: Fraction(5, 6)}), sys)
    assert fm2 == LaurentPoly({1: Fraction(1, 3)})
    assert fp2 == LaurentPoly({1: Fraction(-1, 2)})
    f3 = LaurentPoly({0: Fraction(5, 6), -1: Fraction(1, 10)})
    fm3, fp3, cert3 = split_series_arith(f3, sys)
    assert series_sub(fm3, fp3) == f3
    assert cert3.bounds_ok


def test_split_series_random():
    rng = random.Random(97)
    for _ in range(300):
        p = rng.choice((2, 3, 5))
        sys = finite_sys(p, 1, (Fraction(1, 2), 2))
        f = LaurentPoly(
            {k: Fraction(rng.randint(-99, 99), rng.randint(1, 99)) for k in range(-3, 4) if rng.random() < 0.6}
        )
        fm, fp, cert = split_series_arith(f, sys)
        assert series_sub(fm, fp) == f
        assert all(vp(c, p) >= 0 for c in fm.coeffs.values())
        for c in fp.coeffs.values():
            d = c.denominator
            while d % p == 0:
                d //= p
            assert d == 1
        assert cert.bounds_ok


def test_runge_examples():
    sys = finite_sys(2, 1, (Fraction(1, 2), 2))
    f, sps, tps, cert = runge_approximate(
        [LaurentPoly({1: Fraction(1, 6)})], [LaurentPoly({1: 1})], sys, Fraction(1, 100)
    )
    assert f == Fraction(1, 2)
    assert sps[0] == LaurentPoly({1: Fraction(1, 3)})  # exact: error 0
    assert cert.s_defects == (Fraction(0),)
    assert cert.ok
    # all-integer inputs: f = 1 and exact copies
    f2, sps2, tps2, cert2 = runge_approximate(
        [LaurentPoly({0: 3})], [LaurentPoly({1: 2})], sys, Fraction(1, 100)
    )
    assert f2 == 1 and sps2[0] == LaurentPoly({0: 3}) and tps2[0] == LaurentPoly({1: 2})
    assert cert2.ok


def test_runge_modular_inverse_oracle():
    # the spec's worked value: 1/5 = 13 mod 64 gives |1/10 - 13/2|_2 = 1/32
    assert (5 * 13) % 64 == 1 % 64
    assert padic_abs(Fraction(1, 10) - Fraction(13, 2), 2) == Fraction(1, 32)
    sys = finite_sys(2, 1, (Fraction(1, 2), 2))
    f, sps, tps, cert = runge_approximate(
        [LaurentPoly({1: Fraction(1, 2)})], [LaurentPoly({-1: Fraction(1, 5)})], sys, Fraction(1, 16)
    )
    assert f == Fraction(1, 2)
    # t' approximates (1/10) T^-1 in Z[1/2], within delta
    c = tps[0].coeff(-1)
    d = c.denominator
    while d % 2 == 0:
        d //= 2
    assert d == 1
    assert cert.ok


def test_matrix_norm_examples():
    A = AnnulusSpec(BaseCompact.segment(Place.finite(2), 1, 1), Fraction(1, 2), 2)
    assert matrix_norm(SeriesMatrix.identity(2), A) == NormValue.of(1)
    dm = SeriesMatrix([[LaurentPoly({1: 1}), LaurentPoly.zero()], [LaurentPoly.zero(), LaurentPoly({-1: 1})]])
    assert matrix_norm(dm, A) == NormValue.of(2)
    row = SeriesMatrix([[LaurentPoly.one(), LaurentPoly.one()]])
    assert matrix_norm(row, A) == NormValue.of(2)


def test_neumann_examples():
    A = AnnulusSpec(BaseCompact.segment(Place.finite(2), 1, 1), Fraction(1, 2), 2)
    I2 = SeriesMatrix.identity(2)
    assert neumann_inverse(I2, A, 4) == I2
    nil = SeriesMatrix([[LaurentPoly.one(), LaurentPoly({0: 4})], [LaurentPoly.zero(), LaurentPoly.one()]])
    inv = neumann_inverse(nil, A, 4)
    assert inv.entries[0][1] == LaurentPoly({0: -4})
    a1 = SeriesMatrix([[LaurentPoly({0: 1, 1: 16})]])
    b1 = neumann_inverse(a1, A, 5)
    # oracle: geometric series 1 - 16T + 256T^2 - ...
    expect = {k: Fraction(-16) ** k for k in range(5)}
    assert b1.entries[0][0].coeffs == expect
    prod = series_mul(a1.entries[0][0], b1.entries[0][0])
    assert prod.coeff(0) == 1 and all(k >= 5 for k in prod.coeffs if k != 0)
    big = SeriesMatrix([[LaurentPoly({0: 1, 1: 1})]])
    with pytest.raises(NormTooLarge):
        neumann_inverse(big, A, 4)  # ||T|| = 2 > 1/2


def test_cartan_trivial_and_one_sided():
    sysf = finite_sys(2, 1, (Fraction(1, 2), 2))
    I1 = SeriesMatrix.identity(1)
    res = cartan_factorize(I1, sysf, 10, Fraction(1, 2 ** 40))
    assert res.c_minus == I1 and res.c_plus == I1 and res.residual == NormValue.of(0)
    am = SeriesMatrix([[LaurentPoly({0: 1, -1: Fraction(8, 3)})]])
    res2 = cartan_factorize(am, sysf, 10, Fraction(1, 2 ** 40))
    assert res2.c_minus == am and res2.c_plus == I1
    assert res2.sides_ok and res2.bound_4D_ok and res2.residual == NormValue.of(0)


def test_cartan_spec_example_values():
    # 1x1 a = 1 + (128/3) T^-1 + 256 T at p = 2, (s, t) = (1/2, 2): ||a - I|| = 3/128
    sysf = finite_sys(2, 1, (Fraction(1, 2), 2))
    a = SeriesMatrix([[LaurentPoly({0: 1, -1: Fraction(128, 3), 1: 256})]])
    gap = matrix_norm(a.sub(SeriesMatrix.identity(1)), sysf.annulus_on(sysf.overlap_compact()))
    assert gap == NormValue.of(Fraction(3, 128))
    assert gap.hi <= Fraction(1, 18)
    res = cartan_factorize(a, sysf, 60, Fraction(1, 2 ** 40))
    assert res.residual.hi <= Fraction(1, 2 ** 40)
    assert res.sides_ok and res.bound_4D_ok and res.decay_ok
    bound = Fraction(6) * Fraction(3, 128)  # 4D * ||a - I||
    ctxm = sysf.annulus_on(sysf.minus_compact())
    assert matrix_norm(res.c_minus.sub(SeriesMatrix.identity(1)), ctxm).hi <= bound


def test_cartan_two_sided():
    sys2 = finite_sys(2, 1, (Fraction(1, 32), Fraction(1, 16)))
    ident = SeriesMatrix.identity(2)
    entries = [
        [LaurentPoly({0: 1, 2: Fraction(5, 6)}), LaurentPoly({3: Fraction(3, 10)})],
        [LaurentPoly({2: Fraction(1, 6), 3: Fraction(9, 2)}), LaurentPoly({0: 1, 3: Fraction(7, 2)})],
    ]
    a = SeriesMatrix(entries)
    res = cartan_factorize(a, sys2, 60, Fraction(1, 2 ** 40))
    assert res.residual.hi <= Fraction(1, 2 ** 40)
    assert res.sides_ok and res.bound_4D_ok and res.decay_ok
    assert res.iterations >= 2  # a genuine two-sided run
    # the plus side genuinely carries content here
    assert any(e for row in res.c_plus.sub(ident).entries for e in row)
    # decay domination: ||btilde_k|| <= M beta^k termwise
    M = res.btilde_norms[0]
    D = sys2.D
    beta = 4 * D * D * M
    for k, nk in enumerate(res.btilde_norms):
        assert nk <= M * beta ** k


def test_cartan_admissibility_guard():
    sysf = finite_sys(2, 1, (Fraction(1, 2), 2))
    # ||a - I|| = 1/2 > 1/18, and the entry splits across both sides
    a = SeriesMatrix([[LaurentPoly({0: 1, 1: Fraction(5, 6) / 4})]])
    with pytest.raises(EpsilonTooLarge):
        cartan_factorize(a, sysf, 10, Fraction(1, 2 ** 20))
