"""Multiplier algebras of monoid convolution, on exact finite truncations.

The package realizes left/right convolution by a finitely supported symbol
as matrices over canonical windows of six monoid families, estimates the
pair norm max(||L||, ||R||) with a compiled power-iteration kernel (pure
NumPy fallback), and checks the algebraic laws the construction satisfies.
"""

from ._power import NormEstimate, available_backends, default_backend, spectral_norm
from .errors import (
    CapacityError,
    FockmultError,
    IncompatibleWindowError,
    InvalidElementError,
    InvalidSpecError,
    OutOfWindowError,
    SymbolParseError,
    TruncationOverflowError,
    UnsupportedOperationError,
)
from .fock import (
    FockVector,
    Polynomial,
    apply_U,
    convolve_left,
    convolve_right,
    delta,
    inner,
    parse_polynomial,
    polynomial_json_text,
    polynomial_to_json,
    random_polynomial,
)
from .matricial import (
    MatricialBlock,
    RuanVerdict,
    bimodule_action,
    block_from_symbols,
    direct_sum,
    matricial_norm,
    matricial_norm_estimate,
    matricial_product,
    ruan_axiom_check,
)
from .multiplier import (
    CirculantReport,
    IntertwineVerdict,
    MultiplierPair,
    NormReport,
    PairNormEstimate,
    circulant_of,
    finfty_sweep,
    hardy_norm_grid,
    make_pair,
    pair_add,
    pair_adjoint,
    pair_norm,
    pair_norm_estimate,
    pair_product,
    pair_scale,
    popescu_norm,
    verify_intertwine,
)
from .operators import (
    AntiLinearU,
    OperatorMatrix,
    adjoint,
    dump_matrix_csv,
    embed,
    flip_matrix,
    left_mult_matrix,
    lrr_matrix,
    multiply,
    operator_norm,
    right_mult_matrix,
    sharp_of,
    u_action,
)
from .semigroups import (
    CancellativityVerdict,
    Cyclic,
    Element,
    FiniteGroup,
    FreeMonoid,
    Integers,
    MonoidSpec,
    NonNegIntegers,
    NonNegVectors,
    Window,
    check_left_cancellative,
    parse_element,
    parse_spec,
    reverse_word,
    symmetric_group,
    window,
)

__version__ = "0.1.0"

__all__ = [
    "AntiLinearU",
    "CancellativityVerdict",
    "CapacityError",
    "CirculantReport",
    "Cyclic",
    "Element",
    "FiniteGroup",
    "FockVector",
    "FockmultError",
    "FreeMonoid",
    "IncompatibleWindowError",
    "Integers",
    "IntertwineVerdict",
    "InvalidElementError",
    "InvalidSpecError",
    "MatricialBlock",
    "MonoidSpec",
    "MultiplierPair",
    "NonNegIntegers",
    "NonNegVectors",
    "NormEstimate",
    "NormReport",
    "OperatorMatrix",
    "OutOfWindowError",
    "PairNormEstimate",
    "Polynomial",
    "RuanVerdict",
    "SymbolParseError",
    "TruncationOverflowError",
    "UnsupportedOperationError",
    "Window",
    "adjoint",
    "apply_U",
    "available_backends",
    "bimodule_action",
    "block_from_symbols",
    "check_left_cancellative",
    "circulant_of",
    "convolve_left",
    "convolve_right",
    "default_backend",
    "delta",
    "direct_sum",
    "dump_matrix_csv",
    "embed",
    "finfty_sweep",
    "flip_matrix",
    "hardy_norm_grid",
    "inner",
    "left_mult_matrix",
    "lrr_matrix",
    "make_pair",
    "matricial_norm",
    "matricial_norm_estimate",
    "matricial_product",
    "multiply",
    "operator_norm",
    "pair_add",
    "pair_adjoint",
    "pair_norm",
    "pair_norm_estimate",
    "pair_product",
    "pair_scale",
    "parse_element",
    "parse_polynomial",
    "parse_spec",
    "polynomial_json_text",
    "polynomial_to_json",
    "popescu_norm",
    "random_polynomial",
    "reverse_word",
    "right_mult_matrix",
    "ruan_axiom_check",
    "sharp_of",
    "spectral_norm",
    "symmetric_group",
    "u_action",
    "verify_intertwine",
    "window",
]
