"""Exact verification engine for Clifford and Bell gate groups, BN pairs and the 27 lines."""
from .cache import CorruptCache
from .claims import REGISTRY, ClaimReport, Config, UnknownClaim, run
from .cyclo import CycloNum, GateMatrix, gate
from .group import BudgetExceeded, FiniteGroup, closure

__all__ = ["CorruptCache", "REGISTRY", "ClaimReport", "Config", "UnknownClaim", "run",
           "CycloNum", "GateMatrix", "gate", "BudgetExceeded", "FiniteGroup", "closure"]
__version__ = "0.1.0"
