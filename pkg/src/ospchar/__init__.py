"""Exact characteristic identities and branching invariants for osp(m|n)."""

from __future__ import annotations

from .algebra_core import (
    EXTRA,
    AlgebraSignature,
    Convention,
    Even,
    GradedIndex,
    Odd,
    Weight,
    casimir_eigenvalue,
    parse_weight,
    rho,
    validate_dominant,
)
from .branching import BranchContext, branch_enumerate, index_sets, validate_branch_pair
from .char_roots import characteristic_roots, extended_labels
from .errors import DegenerateDirection, InvalidBranch, InvalidIndex, InvalidWeight, OspError, PoleError, SingularSystem

__version__ = "0.1.0"

__all__ = [
    "EXTRA",
    "AlgebraSignature",
    "BranchContext",
    "Convention",
    "DegenerateDirection",
    "Even",
    "GradedIndex",
    "InvalidBranch",
    "InvalidIndex",
    "InvalidWeight",
    "Odd",
    "OspError",
    "PoleError",
    "SingularSystem",
    "Weight",
    "branch_enumerate",
    "casimir_eigenvalue",
    "characteristic_roots",
    "extended_labels",
    "index_sets",
    "parse_weight",
    "rho",
    "validate_branch_pair",
    "validate_dominant",
]
