"""From-scratch interval constraint engine with branch-and-bound."""

from .check import Assignment, evaluate
from .model import Model, SumRelation
from .solve import SolveReport, SolverConfig, solve

__all__ = [
    "Assignment",
    "Model",
    "SolveReport",
    "SolverConfig",
    "SumRelation",
    "evaluate",
    "solve",
]
