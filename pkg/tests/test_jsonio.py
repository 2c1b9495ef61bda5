import math
from fractions import Fraction

import pytest

from arithline import jsonio as io
from arithline import (
    AnnulusSpec,
    BaseCompact,
    BasePoint,
    LaurentPoly,
    LinePoint,
    NormValue,
    Place,
    SeriesMatrix,
)
from arithline.covers_galois import cyclic_table

INF = math.inf


def test_frac_strings():
    assert io.frac_str(Fraction(1, 4)) == "1/4"
    assert io.frac_str(Fraction(3)) == "3"
    assert io.parse_frac("-5/6") == Fraction(-5, 6)
    assert io.parse_frac(7) == 7
    assert io.exp_str(INF) == "inf"
    assert io.parse_exp("inf") == INF


def test_dyadic_decimal():
    assert io.dyadic_decimal(Fraction(1, 2)) == "0.5"
    assert io.dyadic_decimal(Fraction(-3, 8)) == "-0.375"
    assert io.dyadic_decimal(Fraction(5)) == "5"
    assert Fraction(io.dyadic_decimal(Fraction(77, 64))) == Fraction(77, 64)
    with pytest.raises(ValueError):
        io.dyadic_decimal(Fraction(1, 3))


def test_norm_value_payloads():
    assert io.norm_value_json(NormValue.of(Fraction(1, 4))) == {"exact": "1/4"}
    nv = NormValue.of(7).pow_rational(Fraction(1, 2))
    payload = io.norm_value_json(nv)
    assert float(payload["lo"]) <= 7 ** 0.5 <= float(payload["hi"])


def test_base_point_roundtrip():
    for x in (
        BasePoint.central(),
        BasePoint.finite(5, Fraction(3, 2)),
        BasePoint.extreme(11),
        BasePoint.arch(Fraction(1, 3)),
    ):
        assert io.parse_base_point(io.base_point_json(x)) == x


def test_compact_roundtrip():
    for V in (
        BaseCompact.segment(Place.finite(2), 1, INF),
        BaseCompact.segment(Place.infinite(), 0, Fraction(1, 2)),
        BaseCompact.whole_space(),
        BaseCompact.star({Place.finite(2): 1, Place.infinite(): Fraction(1, 2)}),
    ):
        assert io.parse_base_compact(io.base_compact_json(V)) == V


def test_line_point_roundtrip():
    pts = [
        LinePoint.disk(BasePoint.finite(2, 1), Fraction(1, 2), 1),
        LinePoint.triv_closed(BasePoint.central(), (1, 0, 1), Fraction(1, 2)),
        LinePoint.triv_outer(BasePoint.extreme(3), 2),
        LinePoint.arch(BasePoint.arch(1), 1, -2),
    ]
    for x in pts:
        assert io.parse_line_point(io.line_point_json(x)) == x


def test_laurent_and_annulus_roundtrip():
    f = LaurentPoly({-2: Fraction(1, 3), 0: 5, 4: Fraction(-7, 2)}, 6)
    assert io.parse_laurent(io.laurent_json(f)) == f
    assert io.parse_laurent(["1", "0", "2"]) == LaurentPoly({0: 1, 2: 2})
    A = AnnulusSpec(BaseCompact.segment(Place.finite(3), 1, 2), Fraction(1, 2), 2)
    assert io.parse_annulus(io.annulus_json(A)) == A


def test_matrix_and_table_roundtrip():
    m = SeriesMatrix([[LaurentPoly({0: 1}), LaurentPoly({1: Fraction(1, 2)})],
                      [LaurentPoly.zero(), LaurentPoly({-1: 3})]])
    assert io.parse_matrix(io.matrix_json(m)) == m
    G = cyclic_table(5)
    assert io.parse_group_table(io.group_table_json(G)) == G
