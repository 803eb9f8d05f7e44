"""Quantitative concept analysis over finite proximity sets."""

from .concepts import (
    Concept,
    ConceptTable,
    FCALattice,
    concept_proximity_table,
    decomposition,
    fca_lattice,
    recommend,
    representable_concepts,
)
from .exceptions import (
    ParseError,
    ProxlatError,
    SizeError,
    UnsupportedFragmentError,
    ValidationError,
)
from .matrix import (
    ContextMatrix,
    PhiCut,
    adjunction_gap,
    compose,
    dual_matrix,
    identity,
    is_connection,
    is_embedding,
    is_projection,
    matrices_from_morphism,
    phi_cut_closure,
    phi_lower,
    phi_upper,
    validate_matrix,
    verify_decomposition,
)
from .proxet import Proxet, discrete, from_poset, from_set_family, validate
from .values import from_stars, parse_value, residuate
from .vectors import (
    Cut,
    LowerVector,
    UpperVector,
    cone_down,
    cone_up,
    cut_closure,
    dm_completion,
    supremum,
    infimum,
    yoneda_lower,
    yoneda_upper,
)

__version__ = "0.1.0"

__all__ = [
    "Concept",
    "ConceptTable",
    "ContextMatrix",
    "Cut",
    "FCALattice",
    "LowerVector",
    "ParseError",
    "PhiCut",
    "Proxet",
    "ProxlatError",
    "SizeError",
    "UnsupportedFragmentError",
    "UpperVector",
    "ValidationError",
    "adjunction_gap",
    "compose",
    "concept_proximity_table",
    "cone_down",
    "cone_up",
    "cut_closure",
    "decomposition",
    "discrete",
    "dm_completion",
    "dual_matrix",
    "fca_lattice",
    "from_poset",
    "from_set_family",
    "from_stars",
    "identity",
    "infimum",
    "is_connection",
    "is_embedding",
    "is_projection",
    "matrices_from_morphism",
    "parse_value",
    "phi_cut_closure",
    "phi_lower",
    "phi_upper",
    "recommend",
    "representable_concepts",
    "residuate",
    "supremum",
    "validate",
    "validate_matrix",
    "verify_decomposition",
    "yoneda_lower",
    "yoneda_upper",
]
