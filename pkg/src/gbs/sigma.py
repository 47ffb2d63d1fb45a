"""Characters of Gamma(S) and its finite-index subgroups, and the finite
complements of their BNS invariants.

A character kills ``a`` (it must, since chi(a) = n_i chi(a)), so it is stored
by its values on the stable letters t_1..t_r, or on x_1..x_r for a subgroup
given by canonical generators A_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import GammaSpec
from .sphere import Direction, primitive
from .subgroup import CanonicalSubgroup


@dataclass(frozen=True)
class Character:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @property
    def r(self) -> int:
        return len(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def direction(self) -> Direction:
        return primitive(self.values)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class LaurentPoly:
    """Integer combination of monomials t^z, z in Z^r."""

    terms: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        merged: dict[tuple[int, ...], int] = {}
        for c, z in self.terms:
            z = tuple(int(x) for x in z)
            merged[z] = merged.get(z, 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((c, z) for z, c in merged.items() if c)))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self.terms + other.terms)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((k * c, z) for c, z in self.terms))


def complement_gamma(spec: GammaSpec) -> list[Direction]:
    """The r coordinate directions."""
    r = spec.r
    return [Direction(tuple(int(i == j) for j in range(r))) for i in range(r)]


def complement_subgroup(H: CanonicalSubgroup) -> list[Direction]:
    """Column i of k, (k_1i, ..., k_ii, 0, ..., 0), made primitive."""
    r = H.r
    return [primitive([H.k[j][i] for j in range(r)]) for i in range(r)]


def restrict_character(chi: Character, H: CanonicalSubgroup) -> Character:
    """xi(x_i) = sum_j k_ij chi(t_j); tails vanish because chi(a) = 0."""
    if chi.r != H.r:
        raise ValueError("character and subgroup ranks differ")
    return Character(tuple(sum(H.k[i][j] * chi.values[j] for j in range(H.r)) for i in range(H.r)))


def extend_character(xi: Character, H: CanonicalSubgroup) -> Character:
    """The unique chi on the ambient group restricting to xi (back-substitution)."""
    r = H.r
    if xi.r != r:
        raise ValueError("character and subgroup ranks differ")
    chi = [Fraction(0)] * r
    for i in range(r - 1, -1, -1):
        rest = xi.values[i] - sum(H.k[i][j] * chi[j] for j in range(i + 1, r))
        chi[i] = rest / H.k[i][i]
    return Character(tuple(chi))


def centralizer_eval(lam: LaurentPoly, spec: GammaSpec) -> Fraction:
    """sum c_z prod n_i^z_i: the scalar by which lam acts on a; lam centralizes a iff 1."""
    total = Fraction(0)
    for c, z in lam.terms:
        if len(z) != spec.r:
            raise ValueError("exponent vector length must equal r")
        term = Fraction(c)
        for n_i, e in zip(spec.moduli, z):
            term *= Fraction(n_i) ** e
        total += term
    return total


def complement_product(parts: Sequence[tuple[Sequence[Direction], int]]) -> list[Direction]:
    """Block-embed each factor's complement into the product's character space."""
    if not parts:
        raise ValueError("need at least one factor")
    total = sum(rank for _, rank in parts)
    out = []
    offset = 0
    for dirs, rank in parts:
        if not dirs:
            raise ValueError("each factor must contribute a nonempty complement")
        for d in dirs:
            if len(d) != rank:
                raise ValueError("direction length does not match the factor rank")
            coords = [0] * total
            coords[offset:offset + rank] = d.coords
            out.append(Direction(tuple(coords)))
        offset += rank
    return out
