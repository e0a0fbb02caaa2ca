"""Exact computations with central extensions of finite-dimensional algebras."""

from .algebra import Algebra, AlgebraHom, commutator_ideal, comm_reflection
from .central import (
    algebraically_central,
    annihilator_central,
    categorically_central,
    classically_central,
)
from .exactfield import Field, Matrix
from .extension import Action, SplitExtension, extract_action, semidirect

__all__ = [
    "Action",
    "Algebra",
    "AlgebraHom",
    "Field",
    "Matrix",
    "SplitExtension",
    "algebraically_central",
    "annihilator_central",
    "categorically_central",
    "classically_central",
    "comm_reflection",
    "commutator_ideal",
    "extract_action",
    "semidirect",
]
