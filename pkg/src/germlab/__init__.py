"""germlab: invariants of map germs from surface singularities to the plane.

For f: (X, 0) -> (C^2, 0) on a surface isolated complete intersection
singularity, computes the Milnor numbers of X, of the critical curve S, of
the discriminant Delta and of f^-1(Delta), the cusp and double-fold counts
c and d, and the degree m, all exactly, and checks the identities that tie
them together.  Also: closed forms for weighted-homogeneous germs and
equisingularity diagnostics for one-parameter families.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateGermError,
    GenericityError,
    GermlabError,
    InconsistencyError,
    InputError,
    NonRealizableError,
    NotFiniteError,
)
from .polyring import (
    MonomialOrder,
    ParseError,
    Polynomial,
    PolyRing,
    block,
    degrevlex,
    jacobian_matrix,
    lex,
    negdegrevlex,
    parse_poly,
    weighted,
    weighted_local,
)
from .stdbasis import INFINITE, IdealBasis, colength, eliminate, lift, normal_form, standard_basis
from .invariants import GermProblem, InvariantReport, analyze, milnor_icis
from .weighted import wh_cross_validate, wh_discriminant_type, wh_invariants, wh_signature
from .family import GENERIC, FamilyProblem, FamilyProfile, family_profile, polar_multiplicity_m1, sampling_adequacy, specialize_family

__all__ = [
    "__version__",
    "GermlabError", "InputError", "DegenerateGermError", "NotFiniteError",
    "NonRealizableError", "InconsistencyError", "GenericityError",
    "MonomialOrder", "ParseError", "Polynomial", "PolyRing", "parse_poly", "jacobian_matrix",
    "degrevlex", "lex", "weighted", "negdegrevlex", "weighted_local", "block",
    "INFINITE", "IdealBasis", "colength", "eliminate", "lift", "normal_form", "standard_basis",
    "GermProblem", "InvariantReport", "analyze", "milnor_icis",
    "wh_signature", "wh_invariants", "wh_discriminant_type", "wh_cross_validate",
    "GENERIC", "FamilyProblem", "FamilyProfile", "specialize_family", "polar_multiplicity_m1",
    "family_profile", "sampling_adequacy",
]
