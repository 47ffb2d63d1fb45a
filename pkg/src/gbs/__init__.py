"""Exact computations in the solvable Baumslag-Solitar type groups
Gamma(S) = Z[1/n] x| Z^r: normal forms, finite-index subgroups, characters and
their BNS complements, sphere geometry and Cayley-graph witnesses.
"""

from .arith import Element, GammaSpec, GroupWord, TwistedSpec
from .subgroup import CanonicalSubgroup, canonicalize, index

__all__ = [
    "CanonicalSubgroup",
    "Element",
    "GammaSpec",
    "GroupWord",
    "TwistedSpec",
    "canonicalize",
    "index",
]
