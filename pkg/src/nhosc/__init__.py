"""Bi-orthogonal eigensystems of non-Hermitian oscillators and nonclassicality metrics."""

from .algebra import BiState, LadderKind
from .eigensystem import GridSpec, ModelParams, eigenstate
from .states import FamilySpec, make_state

__all__ = ["BiState", "LadderKind", "GridSpec", "ModelParams", "eigenstate",
           "FamilySpec", "make_state"]
__version__ = "0.1.0"
