"""Exact computations with symplectic groups of skew forms over commutative rings."""

from .errors import SympnormError
from .forms import (
    C_of,
    R_of,
    SkewForm,
    alpha_of,
    beta_of,
    conjugate_transport,
    make_psi,
    make_se,
    make_skewform,
    psi_form,
    sigma,
    sp_check,
)
from .ideals import Ideal, enumerate_max_ideals, make_ideal, parse_ideal
from .matrix import Matrix, det, identity, mat_inverse, pfaffian
from .relative import (
    RelativeWord,
    dilate_word,
    homogenize_matrix,
    multi_dilate_conjugated,
    normality_witness,
    relative_factorize,
    rsp_kernel_check,
    shuffle_identity,
    split_vector,
)
from .rings import RingElement, adjoin, grade_decompose, homogenize_map, localize_at, ring_make, substitute
from .standard_form import (
    ElementaryCertificate,
    random_pf1_form,
    reduce_to_psi_corner,
    signed_swap,
    sp_local_word,
    whitehead_factor,
)
from .words import (
    SE,
    Cgen,
    GroupWord,
    Inverse,
    Rgen,
    commutator_identity_check,
    decompose_C_psi,
    decompose_R_psi,
    rewrite_se_off_corner,
    split_generator,
    transport_word,
)

__all__ = [
    "SympnormError",
    "C_of",
    "R_of",
    "SkewForm",
    "alpha_of",
    "beta_of",
    "conjugate_transport",
    "make_psi",
    "make_se",
    "make_skewform",
    "psi_form",
    "sigma",
    "sp_check",
    "Ideal",
    "enumerate_max_ideals",
    "make_ideal",
    "parse_ideal",
    "Matrix",
    "det",
    "identity",
    "mat_inverse",
    "pfaffian",
    "RelativeWord",
    "dilate_word",
    "homogenize_matrix",
    "multi_dilate_conjugated",
    "normality_witness",
    "relative_factorize",
    "rsp_kernel_check",
    "shuffle_identity",
    "split_vector",
    "RingElement",
    "adjoin",
    "grade_decompose",
    "homogenize_map",
    "localize_at",
    "ring_make",
    "substitute",
    "ElementaryCertificate",
    "random_pf1_form",
    "reduce_to_psi_corner",
    "signed_swap",
    "sp_local_word",
    "whitehead_factor",
    "SE",
    "Cgen",
    "GroupWord",
    "Inverse",
    "Rgen",
    "commutator_identity_check",
    "decompose_C_psi",
    "decompose_R_psi",
    "rewrite_se_off_corner",
    "split_generator",
    "transport_word",
]

__version__ = "0.1.0"
