"""Finite permutation groups and sigma-partition structure theory."""

from .catalog import group_from_text, parse_group_expr, preset, realize, small_catalog
from .groups import Group, group_from_generators
from .perms import Perm, perm_from_cycles
from .sigma import SYLOW, classify, complete_hall_set, hall_subgroup, parse_sigma, residual
from .theorems import (cross_validate, is_PsigmaT_brute, is_PsigmaT_transitive, robinson_complex,
                       theorem_B_check, theorem_C_check, theorem_D_check)
from .verdict import Caps, CapExceeded, InconsistencyError, ParseError, Verdict

__version__ = "0.1.0"

__all__ = [
    "Caps", "CapExceeded", "Group", "InconsistencyError", "ParseError", "Perm", "SYLOW", "Verdict",
    "classify", "complete_hall_set", "cross_validate", "group_from_generators", "group_from_text",
    "hall_subgroup", "is_PsigmaT_brute", "is_PsigmaT_transitive", "parse_group_expr", "parse_sigma",
    "perm_from_cycles", "preset", "realize", "residual", "robinson_complex", "small_catalog",
    "theorem_B_check", "theorem_C_check", "theorem_D_check",
]
