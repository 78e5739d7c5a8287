"""Z/2-equivariant ordinary cohomology of a point, EP, E(A,P) and CP^∞_G.

Everything is exact integer arithmetic.  The main entry points are
re-exported here; see the submodules for the verification routines.
"""

from .expr import ParseError, format_element, parse
from .mackey import Catalog, MackeyFunctor, classify, cohomology_at
from .point import (
    EAPElement,
    EPElement,
    PointElement,
    eap_group_at,
    ep_group_at,
    les_point_check,
    point_group_at,
    point_mul,
)
from .projective import (
    CpElement,
    FixedElement,
    chi_star,
    cp_group_at,
    cp_mul,
    enumerate_basis_B,
    normalize,
    restrict,
    restrict_minus,
    restrict_plus,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "CpElement",
    "EAPElement",
    "EPElement",
    "FixedElement",
    "MackeyFunctor",
    "ParseError",
    "PointElement",
    "chi_star",
    "classify",
    "cohomology_at",
    "cp_group_at",
    "cp_mul",
    "eap_group_at",
    "enumerate_basis_B",
    "ep_group_at",
    "format_element",
    "les_point_check",
    "normalize",
    "parse",
    "point_group_at",
    "point_mul",
    "restrict",
    "restrict_minus",
    "restrict_plus",
]
