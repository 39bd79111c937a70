"""Flag-rank-metric codes over finite fields: constructions, bounds and exhaustive verification."""

from __future__ import annotations

from flagrank.errors import BudgetExceeded, FlagRankError, InvalidInput
from flagrank.flagcodes import CodeReport, UTCode, code_report, flag_rank_weight
from flagrank.gf import FieldSpec, field_make, gf
from flagrank.linalg import Mat
from flagrank.scan import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "CodeReport",
    "FieldSpec",
    "FlagRankError",
    "InvalidInput",
    "Mat",
    "UTCode",
    "code_report",
    "field_make",
    "flag_rank_weight",
    "gf",
]
