"""Exact certification of separating-invariant degree bounds for finite abelian groups."""

from .abelian import GroupSpec, parse_group
from .blocks import ZSequence, atoms, build_S, enumerate_block_elements
from .certify import (
    SeparationCertificate,
    check_condition_star,
    decompose_into_S,
    minimal_certified_degree,
)
from .cyclotomic import Cyclotomic
from .galois import FieldDescriptor, galois_group, orbit_partition, parse_field, stable_subsets
from .lattice import IntLattice, hermite_normal_form, kernel_basis
from .report import TOOL_VERSION as __version__
from .separation import MatrixGroup, separated_by_degree

__all__ = [
    "Cyclotomic",
    "FieldDescriptor",
    "GroupSpec",
    "IntLattice",
    "MatrixGroup",
    "SeparationCertificate",
    "ZSequence",
    "atoms",
    "build_S",
    "check_condition_star",
    "decompose_into_S",
    "enumerate_block_elements",
    "galois_group",
    "hermite_normal_form",
    "kernel_basis",
    "minimal_certified_degree",
    "orbit_partition",
    "parse_field",
    "parse_group",
    "separated_by_degree",
    "stable_subsets",
]
