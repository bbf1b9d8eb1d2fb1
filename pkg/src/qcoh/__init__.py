"""Exact computations in the quantum cohomology of the moduli space of
odd-degree rank-two stable bundles on a curve of genus g."""

from .algebra import Element, Monomial, Signature, multiply, parse_element, substitute_even
from .errors import PreconditionError, VerificationError
from .gw import GWQuery, gw_direct, gw_value, gw_via_qhn, legal_queries, verify_lemma9
from .jacobian import (
    VOLUME_CONVENTION,
    extension_chern_classes,
    grr_extension_chern_character,
    integrate_J,
    omega,
)
from .qh import (
    InvariantQuantumRing,
    cor20_assembly,
    hat_class_table,
    prop19_exclusion_check,
    prop19_identity_check,
    quantum_product,
    quantum_ring,
)
from .quotient import QuotientPresentation, basis, classical_presentation, normal_form, sp_decomposition
from .relations import (
    ABG,
    RelationTriple,
    classical_relations,
    floer_relations,
    hat_transform,
    quantum_relations,
)

__version__ = "0.1.0"

__all__ = [
    "ABG",
    "Element",
    "GWQuery",
    "InvariantQuantumRing",
    "Monomial",
    "PreconditionError",
    "QuotientPresentation",
    "RelationTriple",
    "Signature",
    "VOLUME_CONVENTION",
    "VerificationError",
    "basis",
    "classical_presentation",
    "classical_relations",
    "cor20_assembly",
    "extension_chern_classes",
    "floer_relations",
    "grr_extension_chern_character",
    "gw_direct",
    "gw_value",
    "gw_via_qhn",
    "hat_class_table",
    "hat_transform",
    "integrate_J",
    "legal_queries",
    "multiply",
    "normal_form",
    "omega",
    "parse_element",
    "prop19_exclusion_check",
    "prop19_identity_check",
    "quantum_product",
    "quantum_relations",
    "quantum_ring",
    "sp_decomposition",
    "substitute_even",
    "verify_lemma9",
]
