"""arithline: exact desk-scale kernel for the arithmetic affine line.

Points and seminorms of the base space over Z and of the affine line,
arithmetic convergent series with certified multi-place norms, Weierstrass
division and preparation with explicit constants, Hensel lifting, Cousin
splittings and the Cartan matrix factorization, and the cyclic-cover and
group-gluing constructions. Everything computes with exact rationals;
irrational quantities come back as outward-rounded interval certificates.
"""

from .normvalue import NormValue, default_bits, set_default_bits
from .base_space import (
    BaseCompact,
    BasePoint,
    INF,
    Place,
    RingLabel,
    base_norm,
    classify_base_point,
    eval_base_seminorm,
    product_formula_defect,
    ring_label,
    shilov_base,
)
from .affine_line import (
    Arch,
    LinePoint,
    TrivClosed,
    TrivOuter,
    UmDisk,
    eval_line_seminorm,
    flow,
)
from .series_ring import (
    AnnulusSpec,
    LaurentPoly,
    compare_annulus_factor,
    invert_unit,
    norm_annulus,
    series_arith,
    shilov_annulus,
    uniform_norm_annulus,
)
from .padic import PadicApprox
from .weierstrass import (
    DivisionCert,
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
from .cousin_cartan import (
    CartanResult,
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
from .covers_galois import (
    CoverDescriptor,
    GroupTable,
    binomial_root_series,
    cyclic_cover_split,
    eisenstein_witness,
    find_prime_congruent,
    group_cover_data,
    mu_homomorphism,
    primitive_root_of_unity,
    standard_group_tables,
)

__version__ = "0.1.0"
