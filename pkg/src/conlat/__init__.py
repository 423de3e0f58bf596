"""Finite lattices, their congruence lattices, and lifting checks for semilattice diagrams."""

from .congruence import (
    ConLattice,
    Congruence,
    con_functor_map,
    con_lattice,
    has_almost_permutable_congruences,
    has_permutable_congruences,
    is_congruence_splitting,
    is_simple,
    permutable_via_criterion,
    principal_congruence,
    res_of,
)
from .diagram import Diagram, DiagramIso, IndexPoset, con_image, diagram_isomorphism
from .errors import ConlatError
from .kernels import BACKEND
from .lattice import FiniteLattice, LatticeHom, boolean, builtin, chain, lattice_from_covers, m3, n5, s_lattice
from .report import Report, Verdict
from .semilattice import FiniteJoinSemilattice0, JoinZeroHom, powerset_semilattice

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ConLattice", "Congruence", "ConlatError", "Diagram", "DiagramIso", "FiniteJoinSemilattice0",
    "FiniteLattice", "IndexPoset", "JoinZeroHom", "LatticeHom", "Report", "Verdict", "boolean", "builtin", "chain",
    "con_functor_map", "con_image", "con_lattice", "diagram_isomorphism", "has_almost_permutable_congruences",
    "has_permutable_congruences", "is_congruence_splitting", "is_simple", "lattice_from_covers", "m3", "n5",
    "permutable_via_criterion", "principal_congruence", "res_of", "s_lattice", "powerset_semilattice",
]
