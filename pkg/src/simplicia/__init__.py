"""Combinatorial manifolds: complexes, invariants, recognition, constructions and small censuses."""

from .core import (
    Complex,
    ComplexError,
    Status,
    Verdict,
    emit,
    from_facets,
    join,
    link,
    parse,
    read,
    star,
    write,
)
from .homology import HomologyProfile, homology
from .invariants import f_vector, h_vector, report
from .isomorphism import are_isomorphic, canonical_form
from .recognition import is_combinatorial_manifold, is_combinatorial_sphere, is_pseudomanifold

__version__ = "0.1.0"

__all__ = [
    "Complex",
    "ComplexError",
    "HomologyProfile",
    "Status",
    "Verdict",
    "are_isomorphic",
    "canonical_form",
    "emit",
    "f_vector",
    "from_facets",
    "h_vector",
    "homology",
    "is_combinatorial_manifold",
    "is_combinatorial_sphere",
    "is_pseudomanifold",
    "join",
    "link",
    "parse",
    "read",
    "report",
    "star",
    "write",
]
