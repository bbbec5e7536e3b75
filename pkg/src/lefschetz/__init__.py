"""Exact-arithmetic toolkit for graded artinian algebras and Lefschetz properties."""

from .exactmath import GF, QQ, FieldSpec, Matrix, RowSpace, det, kernel_basis, rank, rref, solve
from .polynomials import (
    DualPoly,
    ParseError,
    Poly,
    contract,
    differentiate,
    divided_multiply,
    eval_linear_power,
    format_dual,
    format_poly,
    from_ordinary,
    monomials,
    parse_dual,
    parse_element,
    parse_poly,
    to_ordinary,
)
from .algebra import (
    GradedAlgebra,
    Ideal,
    NotArtinianError,
    NotGorensteinError,
    Orientation,
    Ring,
    default_orientation,
    from_dual_generator,
    from_ideal,
    hilbert_function,
    hilbert_series_text,
    ideal_degree_piece,
    integral,
    inverse_system,
    is_gorenstein,
    is_level,
    orientation_from_socle_element,
    pairing_matrix,
    socle_vectors,
)
from .checks import (
    GenericityConfig,
    JordanType,
    LefschetzReport,
    h_vector,
    hessian_det,
    hessian_matrix,
    jordan_type,
    nll_conditions,
    slp_by_hessian,
    slp_for_element,
    slp_generic,
    slpn_for_element,
    slpn_generic,
    symmetric,
    unimodal,
    wlp_for_element,
    wlp_generic,
)
from .sl2 import (
    Sl2Triple,
    irreducible_decomposition,
    model_rep,
    slpn_via_weights,
    triple_from_lefschetz,
    verify_triple,
    weight_decomposition,
)
from .constructions import (
    AlgebraMap,
    BlowupAlgebra,
    PairAlgebra,
    ThomClass,
    algebra_map,
    blowup,
    connected_sum,
    connected_sum_over_field,
    exceptional_divisor,
    fiber_product,
    lefschetz_preservation_report,
    presentation_of,
    tensor_product,
    thom_class,
)

__all__ = [name for name in dir() if not name.startswith("_")]
