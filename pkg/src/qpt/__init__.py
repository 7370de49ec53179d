"""Quantum isomorphic graphs from groups of central type."""

from ._kernels import BACKEND
from .bcs import BinaryConstraintSystem, QuantumSolution, bcs_graph, homogenise
from .cocycles import CentralTypeSubgroup, TwoCocycle
from .frobenius import FrobeniusAlgebra, QuantumGraph
from .graphs import ClassicalGraph, are_isomorphic, automorphism_group
from .numerics import Tolerance
from .permgroups import FiniteGroup, PermGroup, Permutation, Subgroup
from .qiso import PPM, QuantumIso, build_X, pseudo_telepathy_verdict, split_frobenius_monoid
from .ueb import UnitaryErrorBasis

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinaryConstraintSystem",
    "CentralTypeSubgroup",
    "ClassicalGraph",
    "FiniteGroup",
    "FrobeniusAlgebra",
    "PPM",
    "PermGroup",
    "Permutation",
    "QuantumGraph",
    "QuantumIso",
    "QuantumSolution",
    "Subgroup",
    "Tolerance",
    "TwoCocycle",
    "UnitaryErrorBasis",
    "are_isomorphic",
    "automorphism_group",
    "bcs_graph",
    "build_X",
    "homogenise",
    "pseudo_telepathy_verdict",
    "split_frobenius_monoid",
]
