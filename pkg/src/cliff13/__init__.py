"""Complexified Clifford algebra of spacetime forms and the tensor Dirac-Yang-Mills system.

The subpackages build on each other: :mod:`algebra` (16-dimensional forms),
:mod:`spin`, :mod:`ideals` and :mod:`rep` (left ideals and their matrix
pictures), :mod:`geometry` and :mod:`calculus` (tetrads, curvature and the
covariant operators), :mod:`equations` (field equations and their
identities) and :mod:`suites` / :mod:`cli` (randomized checks).
"""
__version__ = "0.1.0"

from .algebra import E, H, ONE, Multivector
from .errors import (
    Cliff13Error, ConvergenceError, DegeneracyError, DomainError, InvalidGeneratorError, InvalidGradeError,
    NonClosureError, OutsideDomainError, RepresentationError,
)
from .kernels import BACKEND

__all__ = [
    "BACKEND", "E", "H", "ONE", "Multivector", "Cliff13Error", "ConvergenceError", "DegeneracyError",
    "DomainError", "InvalidGeneratorError", "InvalidGradeError", "NonClosureError", "OutsideDomainError",
    "RepresentationError", "__version__",
]
