"""Partial isometries, their composition, and partially defined isometries."""

from ._core import (
    Error,
    NotContraction,
    NotPartialIsometry,
    ParseError,
    ShapeMismatch,
    classify,
    compose_partial_functions,
    compose_pdi,
    contained_partial_isometry,
    contained_pdi,
    dot_compose,
    final_proposition_check,
    hilbert_space_map,
    nearest_partial_isometry,
    partial_function_matrix,
    product_criterion,
    suite_names,
    verify,
)

__all__ = [
    "Error",
    "NotContraction",
    "NotPartialIsometry",
    "ParseError",
    "ShapeMismatch",
    "classify",
    "compose_partial_functions",
    "compose_pdi",
    "contained_partial_isometry",
    "contained_pdi",
    "dot_compose",
    "final_proposition_check",
    "hilbert_space_map",
    "nearest_partial_isometry",
    "partial_function_matrix",
    "product_criterion",
    "suite_names",
    "verify",
]
