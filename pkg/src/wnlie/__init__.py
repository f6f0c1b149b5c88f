"""Exact computations in W_n, the Lie algebra of derivations of K[x1..xn]."""

from .arith import ArityError, Poly, PolyParseError, format_poly, multi_gcd, parse_poly, poly_gcd
from .darboux import DarbouxWitness, find_darboux, is_darboux, simplicity_probe
from .deriv import (
    Deriv,
    apply,
    bracket,
    bracket_span_coeffs,
    divergence,
    euler,
    format_deriv,
    jacobian_deriv,
    jacobian_potential,
    minor,
    parse_deriv,
    rank_over_A,
    verify_delta_corollary,
    verify_minor_identity,
)
from .grading import component_basis, graded_parts, mn_project, verify_bracket_table
from .ideals import IdealGens, contains, groebner, is_invariant, normal_form, tangent_realizer
from .linalg import Frame, FrameOverflow, Subspace, subspace_equal, subspace_span
from .sliso import phi, verify_iso
from .subalg import (
    TruncatedSubalgebra,
    a_span,
    build_L,
    closure_lemma_check,
    i2wn_ideal_check,
    lie_closure,
    lk_member,
    lk_quotient_irreducibility_probe,
    maximality_probe,
    stabilizer_truncated,
)
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "DarbouxWitness",
    "Deriv",
    "Frame",
    "FrameOverflow",
    "IdealGens",
    "Poly",
    "PolyParseError",
    "Subspace",
    "TruncatedSubalgebra",
    "a_span",
    "apply",
    "bracket",
    "bracket_span_coeffs",
    "build_L",
    "closure_lemma_check",
    "component_basis",
    "contains",
    "divergence",
    "euler",
    "find_darboux",
    "format_deriv",
    "format_poly",
    "graded_parts",
    "groebner",
    "i2wn_ideal_check",
    "is_darboux",
    "is_invariant",
    "jacobian_deriv",
    "jacobian_potential",
    "lie_closure",
    "lk_member",
    "lk_quotient_irreducibility_probe",
    "maximality_probe",
    "minor",
    "mn_project",
    "multi_gcd",
    "normal_form",
    "parse_deriv",
    "parse_poly",
    "phi",
    "poly_gcd",
    "rank_over_A",
    "run_suite",
    "simplicity_probe",
    "stabilizer_truncated",
    "subspace_equal",
    "subspace_span",
    "tangent_realizer",
    "verify_bracket_table",
    "verify_delta_corollary",
    "verify_iso",
    "verify_minor_identity",
]
