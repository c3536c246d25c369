"""Exact computations around the level-rank embedding of affine quivers:
lattices, affine Weyl orbits, Fock space, affine Hecke algebras, moment-graph
centers, graded Grothendieck groups and quadratic duality."""

from .errors import DegenerateParameters, DomainError, VerificationError

__version__ = "0.1.0"

__all__ = ["DomainError", "VerificationError", "DegenerateParameters", "__version__"]
