"""JSON encodings of the domain types.

Rationals travel as "p/q" strings (plain "p" for integers); interval
endpoints are outward-rounded dyadics printed as exact decimal strings.
Every top-level CLI payload carries a schema version field "v": 1.
"""

from fractions import Fraction

from .affine_line import LinePoint, TrivClosed, TrivOuter, UmDisk
from .base_space import INF, BaseCompact, BasePoint, Place, RingLabel, is_inf
from .cousin_cartan import SeriesMatrix
from .covers_galois import GroupTable
from .normvalue import NormValue, default_bits
from .padic import PadicApprox
from .polys import Gauss, poly
from .series_ring import AnnulusSpec, LaurentPoly

SCHEMA_VERSION = 1


def frac_str(q) -> str:
    return str(Fraction(q))


def parse_frac(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def exp_str(e) -> str:
    return "inf" if is_inf(e) else frac_str(e)


def parse_exp(s):
    if s == "inf":
        return INF
    return parse_frac(s)


def dyadic_decimal(q: Fraction) -> str:
    """Exact decimal expansion of a dyadic rational."""
    den = q.denominator
    k = den.bit_length() - 1
    if den != 1 << k:
        raise ValueError(f"{q} is not dyadic")
    scaled = q.numerator * 5 ** k  # q = scaled / 10^k
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(k + 1, "0")
    if k == 0:
        return sign + digits
    return sign + (digits[:-k] or "0") + "." + digits[-k:]


def norm_value_json(nv: NormValue) -> dict:
    if nv.is_exact:
        return {"exact": frac_str(nv.exact)}
    nv = nv.rounded(default_bits())
    return {"lo": dyadic_decimal(nv.lo), "hi": dyadic_decimal(nv.hi)}


def place_json(place):
    if place is None:
        return None
    return "inf" if not place.is_finite else place.prime


def parse_place(v):
    if v is None:
        return None
    if v == "inf":
        return Place.infinite()
    return Place.finite(int(v))


def base_point_json(x: BasePoint) -> dict:
    return {"place": place_json(x.place), "exp": exp_str(x.exponent)}


def parse_base_point(d) -> BasePoint:
    place = parse_place(d["place"])
    exp = parse_exp(d["exp"])
    if place is None:
        return BasePoint.central()
    return BasePoint.branch(place, exp)


def base_compact_json(V: BaseCompact) -> dict:
    if V.kind == "segment":
        return {
            "kind": "segment",
            "place": place_json(V.place),
            "u": exp_str(V.u),
            "v": exp_str(V.v),
        }
    return {
        "kind": "star",
        "cuts": [
            {"place": place_json(pl), "v": exp_str(c)} for pl, c in V.cuts
        ],
    }


def parse_base_compact(d) -> BaseCompact:
    if d["kind"] == "segment":
        return BaseCompact.segment(
            parse_place(d["place"]), parse_exp(d["u"]), parse_exp(d["v"])
        )
    if d["kind"] == "star":
        cuts = [(parse_place(c["place"]), parse_exp(c["v"])) for c in d["cuts"]]
        return BaseCompact.star(cuts)
    raise ValueError(f"unknown compact kind {d['kind']!r}")


def ring_label_json(r: RingLabel) -> dict:
    return {
        "label": r.label,
        "inverted_primes": sorted(r.inverted_primes),
        "completion_prime": r.completion_prime,
    }


def poly_json(coeffs) -> list:
    return [frac_str(c) for c in poly(coeffs)]


def parse_poly(lst) -> tuple:
    return poly([parse_frac(c) for c in lst])


def line_point_json(x: LinePoint) -> dict:
    fib = x.fiber
    if isinstance(fib, UmDisk):
        fiber = {"kind": "um", "alpha": frac_str(fib.alpha), "r": frac_str(fib.r)}
    elif isinstance(fib, TrivClosed):
        fiber = {"kind": "trivc", "P": poly_json(fib.P), "r": frac_str(fib.r)}
    elif isinstance(fib, TrivOuter):
        fiber = {"kind": "trivo", "r": frac_str(fib.r)}
    else:
        fiber = {"kind": "arch", "re": frac_str(fib.z.re), "im": frac_str(fib.z.im)}
    return {"base": base_point_json(x.base), "fiber": fiber}


def parse_line_point(d) -> LinePoint:
    base = parse_base_point(d["base"])
    f = d["fiber"]
    kind = f["kind"]
    if kind == "um":
        return LinePoint.disk(base, parse_frac(f["alpha"]), parse_frac(f["r"]))
    if kind == "trivc":
        return LinePoint.triv_closed(base, parse_poly(f["P"]), parse_frac(f["r"]))
    if kind == "trivo":
        return LinePoint.triv_outer(base, parse_frac(f["r"]))
    if kind == "arch":
        return LinePoint.arch(base, parse_frac(f["re"]), parse_frac(f.get("im", 0)))
    raise ValueError(f"unknown fiber kind {kind!r}")


def laurent_json(f: LaurentPoly) -> dict:
    return {
        "coeffs": {str(k): frac_str(f.coeffs[k]) for k in sorted(f.coeffs)},
        "mod": f.trunc_mod,
    }


def parse_laurent(d) -> LaurentPoly:
    if isinstance(d, list):
        return LaurentPoly.from_poly(parse_poly(d))
    coeffs = {int(k): parse_frac(c) for k, c in d["coeffs"].items()}
    return LaurentPoly(coeffs, d.get("mod"))


def annulus_json(A: AnnulusSpec) -> dict:
    return {"V": base_compact_json(A.V), "s": frac_str(A.s), "t": frac_str(A.t)}


def parse_annulus(d) -> AnnulusSpec:
    return AnnulusSpec(
        parse_base_compact(d["V"]), parse_frac(d["s"]), parse_frac(d["t"])
    )


def matrix_json(a: SeriesMatrix) -> dict:
    return {
        "rows": a.rows,
        "cols": a.cols,
        "entries": [[laurent_json(e) for e in row] for row in a.entries],
    }


def parse_matrix(d) -> SeriesMatrix:
    if isinstance(d, list):
        return SeriesMatrix([[parse_laurent(e) for e in row] for row in d])
    return SeriesMatrix(
        [[parse_laurent(e) for e in row] for row in d["entries"]]
    )


def padic_json(x: PadicApprox) -> dict:
    return {"p": x.p, "N": x.N, "residue": x.residue}


def parse_padic(d) -> PadicApprox:
    return PadicApprox(int(d["p"]), int(d["N"]), int(d["residue"]))


def group_table_json(G: GroupTable) -> dict:
    return {"n": G.n, "table": [list(row) for row in G.table], "identity": G.identity}


def parse_group_table(d) -> GroupTable:
    if isinstance(d, list):
        return GroupTable(d)
    return GroupTable(d["table"])


def gauss_json(z: Gauss):
    if z.im == 0:
        return frac_str(z.re)
    return [frac_str(z.re), frac_str(z.im)]


def parse_gauss(v) -> Gauss:
    if isinstance(v, (list, tuple)):
        return Gauss(parse_frac(v[0]), parse_frac(v[1]))
    return Gauss(parse_frac(v))


def versioned(payload: dict) -> dict:
    out = {"v": SCHEMA_VERSION}
    out.update(payload)
    return out
