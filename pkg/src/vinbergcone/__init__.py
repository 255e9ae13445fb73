"""Clifford modules, Nil-graphs, quasi-Nil-algebras and their homogeneous cones."""

from .clifford_core import CliffordModule, bigraded_module, graded_module, module_count
from .families import FAMILIES, build_family, family_from_uri
from .nil_algebra import (
    AlgebraError,
    FormatError,
    IsometryError,
    QuasiNilAlgebra,
    anti_transpose,
    build_from_equipment,
    check_associative,
    check_isometric,
    check_vinberg,
    from_json,
    to_json,
)
from .nil_graph import NilGraph, count_nilgraphs, enumerate_nilgraphs, validate_nilgraph
from .t_cone import GroupElement, HermElement, NotInCone, barrier, generalized_cholesky, herm_from_group

__version__ = "0.1.0"

__all__ = [
    "AlgebraError", "CliffordModule", "FAMILIES", "FormatError", "GroupElement", "HermElement",
    "IsometryError", "NilGraph", "NotInCone", "QuasiNilAlgebra", "anti_transpose", "barrier",
    "bigraded_module", "build_family", "build_from_equipment", "check_associative",
    "check_isometric", "check_vinberg", "count_nilgraphs", "enumerate_nilgraphs",
    "family_from_uri", "from_json", "generalized_cholesky", "graded_module", "herm_from_group",
    "module_count", "to_json", "validate_nilgraph",
]
