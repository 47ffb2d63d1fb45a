"""Finite-index subgroups of Gamma_n in canonical generator form.

Every finite-index H is generated by

    A_i = t_i^{k_ii} ... t_r^{k_ir} a^{l_i}   (i = 1..r)   and   a^m

with k upper triangular, 0 <= k_ji < k_ii above the diagonal of each column,
gcd(m, n) = 1 and H cap <a> = <a^m>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .arith import (
    Element,
    GammaSpec,
    GroupWord,
    element,
    element_to_word,
    fraction_gcd,
    identity,
    nf_commutator,
    nf_from_word,
    nf_inv,
    nf_mul,
    nf_pow,
    nfree_part,
)


class NotFiniteIndex(ValueError):
    pass


class DivisibilityViolation(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalSubgroup:
    """Generator data (k, l, m) of a finite-index subgroup.

    ``reduced`` forms (the default output of :func:`canonicalize`) keep every
    tail in ``[0, m)``; unreduced forms keep whatever integer tails the
    generators came with and are still valid (*)-shape descriptions of H.
    """

    spec: GammaSpec
    k: tuple[tuple[int, ...], ...]
    l: tuple[int, ...]
    m: int

    def __post_init__(self):
        k = tuple(tuple(int(x) for x in row) for row in self.k)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        object.__setattr__(self, "m", int(self.m))
        r = self.spec.r
        if len(k) != r or any(len(row) != r for row in k) or len(self.l) != r:
            raise ValueError("k must be r x r and l of length r")
        if min(self.spec.moduli) < 2:
            raise ValueError("subgroup machinery needs every modulus >= 2")
        for i in range(r):
            if k[i][i] <= 0:
                raise ValueError("diagonal of k must be positive")
            for j in range(r):
                if j < i and k[i][j] != 0:
                    raise ValueError("k must be upper triangular")
                if j > i and not 0 <= k[i][j] < k[j][j]:
                    raise ValueError(f"k[{i}][{j}] must lie in [0, k[{j}][{j}])")
        if self.m < 1 or gcd(self.m, self.spec.n) != 1:
            raise ValueError("m must be positive and coprime to n")

    @property
    def r(self) -> int:
        return self.spec.r

    @property
    def is_reduced(self) -> bool:
        return all(0 <= x < self.m for x in self.l)

    def generators(self) -> list[Element]:
        """A_1, ..., A_r followed by a^m."""
        gens = [element(self.spec, row, li) for row, li in zip(self.k, self.l)]
        gens.append(element(self.spec, (0,) * self.r, self.m))
        return gens

    def generator_words(self) -> list[GroupWord]:
        return [element_to_word(e, self.spec) for e in self.generators()]

    def reduced(self) -> "CanonicalSubgroup":
        return CanonicalSubgroup(self.spec, self.k, tuple(x % self.m for x in self.l), self.m)


@dataclass(frozen=True)
class Presentation:
    """<alpha, x_i | x_i alpha x_i^-1 = alpha^P_i, [x_i, x_j] = alpha^R_ij>."""

    P: tuple[int, ...]
    R: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TransversalRep:
    beta: tuple[int, ...]
    j: int

    def element(self, spec: GammaSpec) -> Element:
        return element(spec, self.beta, self.j)


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

def _triangularize(gens: list[Element], g: GammaSpec):
    """Row-reduce t-exponents on the group elements themselves.

    Returns the pivot elements (one per column, positive pivot) and the
    leftover kernel elements.
    """
    pool = list(gens)
    pivots = []
    for c in range(g.r):
        while True:
            live = [(abs(e.t_exp[c]), idx) for idx, e in enumerate(pool) if e.t_exp[c]]
            if not live:
                raise NotFiniteIndex(
                    "t-exponent rows have rank < r, so the subgroup has infinite index"
                )
            _, p = min(live)
            piv = pool[p]
            done = True
            for idx, e in enumerate(pool):
                if idx != p and e.t_exp[c]:
                    q = e.t_exp[c] // piv.t_exp[c]
                    pool[idx] = nf_mul(e, nf_pow(piv, -q, g), g)
                    if pool[idx].t_exp[c]:
                        done = False
            if done:
                break
        piv = pool.pop(p)
        if piv.t_exp[c] < 0:
            piv = nf_inv(piv, g)
        pivots.append(piv)
    return pivots, pool


def _column_reduce(pivots: list[Element], g: GammaSpec) -> list[Element]:
    """Bring every k_ji (j < i) into [0, k_ii) using A_i."""
    pivots = list(pivots)
    for i in range(g.r):
        kii = pivots[i].t_exp[i]
        for j in range(i):
            q = pivots[j].t_exp[i] // kii
            if q:
                pivots[j] = nf_mul(pivots[j], nf_pow(pivots[i], -q, g), g)
    return pivots


def _clear_tail(e: Element, m0: int, g: GammaSpec) -> Element:
    """Multiply by a^x with x in m0*Z[1/n] so the tail becomes an integer."""
    p, q = e.tail.numerator, e.tail.denominator
    if q == 1:
        return e
    # gcd(q, m0) = 1 because q is n-smooth
    y = (-p * pow(m0, -1, q)) % q
    return nf_mul(e, element(g, (0,) * g.r, Fraction(m0 * y, q)), g)


def commutator_exponents(k, l, spec: GammaSpec) -> dict[tuple[int, int], int]:
    """c_ij = l_i P_i (1 - P_j) - l_j P_j (1 - P_i) for i < j."""
    P = presentation_powers(k, spec)
    r = spec.r
    return {
        (i, j): l[i] * P[i] * (1 - P[j]) - l[j] * P[j] * (1 - P[i])
        for i in range(r) for j in range(i + 1, r)
    }


def presentation_powers(k, spec: GammaSpec) -> tuple[int, ...]:
    """P_i = prod_{j >= i} n_j^{k_ij}."""
    r = spec.r
    return tuple(prod(spec.moduli[j] ** k[i][j] for j in range(i, r)) for i in range(r))


def compute_m(m0: int, comms: Iterable[int], spec: GammaSpec) -> int:
    """Generator of H cap <a> from a^m0 in H and the commutator exponents.

    H cap Z[1/n] is the Z[P_1^{+-1}, ..., P_r^{+-1}] = Z[1/n] module spanned by m0
    and the c_ij, i.e. g*Z[1/n] with g their gcd, whose integer part is
    nfree_part(g)*Z.
    """
    g = m0
    for c in comms:
        g = gcd(g, c)
    return nfree_part(g, spec.n)


def canonicalize(gens: Sequence[GroupWord | Element], spec: GammaSpec,
                 reduce_tails: bool = True) -> CanonicalSubgroup:
    """Canonical (k, l, m) of the subgroup generated by ``gens``.

    With ``reduce_tails=False`` the integer tails produced by the Bezout step
    are kept instead of being reduced mod m.
    """
    if not gens:
        raise ValueError("need at least one generator")
    if min(spec.moduli) < 2:
        raise ValueError("subgroup machinery needs every modulus >= 2")
    elems = [x if isinstance(x, Element) else nf_from_word(x, spec) for x in gens]

    pivots, kernel = _triangularize(elems, spec)
    u = fraction_gcd(e.tail for e in kernel)
    if u == 0:
        comms = [
            nf_commutator(pivots[i], pivots[j], spec).tail
            for i in range(spec.r) for j in range(i + 1, spec.r)
        ]
        nontrivial = [c for c in comms if c]
        if not nontrivial:
            raise NotFiniteIndex(
                "generators commute and no kernel element exists; infinite index"
            )
        u = abs(nontrivial[0])
    # a^u and a^m0 generate the same normal subgroup of H: m0 = n-free part of num(u)
    m0 = nfree_part(u.numerator, spec.n)

    pivots = _column_reduce(pivots, spec)
    pivots = [_clear_tail(e, m0, spec) for e in pivots]
    k = tuple(e.t_exp for e in pivots)
    l = tuple(int(e.tail) for e in pivots)
    m = compute_m(m0, commutator_exponents(k, l, spec).values(), spec)
    H = CanonicalSubgroup(spec, k, l, m)
    return H.reduced() if reduce_tails else H


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------

def _split(w: Element, H: CanonicalSubgroup):
    """Write w = A_1^lam_1 ... A_r^lam_r * a^x; None if the t-part is off the lattice."""
    g = H.spec
    rest = list(w.t_exp)
    lam = []
    for i in range(H.r):
        if rest[i] % H.k[i][i]:
            return None
        q = rest[i] // H.k[i][i]
        lam.append(q)
        for j in range(i, H.r):
            rest[j] -= q * H.k[i][j]
    prod_el = identity(g)
    for q, A in zip(lam, H.generators()):
        prod_el = nf_mul(prod_el, nf_pow(A, q, g), g)
    residual = nf_mul(nf_inv(prod_el, g), w, g)
    return lam, residual.tail


def membership(w: Element, H: CanonicalSubgroup) -> bool:
    """Decide w in H."""
    split = _split(w, H)
    if split is None:
        return False
    _, x = split
    return x.numerator % H.m == 0


def coset_reduce(w: Element, H: CanonicalSubgroup) -> TransversalRep:
    """Transversal element t^beta a^j with H w = H t^beta a^j."""
    g = H.spec
    gens = H.generators()
    cur = w
    for i in range(H.r):
        q = cur.t_exp[i] // H.k[i][i]
        if q:
            cur = nf_mul(nf_pow(gens[i], -q, g), cur, g)
    p, d = cur.tail.numerator, cur.tail.denominator
    j = (p * pow(d, -1, H.m)) % H.m if H.m > 1 else 0
    return TransversalRep(cur.t_exp, j)


def index(H: CanonicalSubgroup) -> int:
    return prod(H.k[i][i] for i in range(H.r)) * H.m


def transversal(H: CanonicalSubgroup) -> list[TransversalRep]:
    """All coset representatives in lexicographic order of (beta, j)."""
    betas: list[tuple[int, ...]] = [()]
    for i in range(H.r):
        betas = [b + (x,) for b in betas for x in range(H.k[i][i])]
    return [TransversalRep(b, j) for b in betas for j in range(H.m)]


def presentation(H: CanonicalSubgroup) -> Presentation:
    g = H.spec
    P = presentation_powers(H.k, g)
    R = [[0] * H.r for _ in range(H.r)]
    for (i, j), c in commutator_exponents(H.k, H.l, g).items():
        if c % H.m:
            raise DivisibilityViolation(f"m={H.m} does not divide c_{i + 1}{j + 1}={c}")
        R[i][j] = c // H.m
    return Presentation(P, tuple(tuple(row) for row in R))


def verify_presentation(H: CanonicalSubgroup, pres: Presentation | None = None) -> bool:
    """Check every relator of the presentation maps to 1 under
    alpha -> a^m, x_i -> A_i."""
    g = H.spec
    try:
        pres = pres or presentation(H)
    except DivisibilityViolation:
        return False
    gens = H.generators()
    alpha, xs = gens[-1], gens[:-1]
    for i in range(H.r):
        lhs = nf_mul(nf_mul(xs[i], alpha, g), nf_inv(xs[i], g), g)
        if lhs != nf_pow(alpha, pres.P[i], g):
            return False
        for j in range(i + 1, H.r):
            if nf_commutator(xs[i], xs[j], g) != nf_pow(alpha, pres.R[i][j], g):
                return False
    return True


def is_gamma_k(H: CanonicalSubgroup):
    """Recognise H as some Gamma_k.

    Returns ``("yes", k)``, ``("no", None)`` or ``("undetermined", None)``.
    The criterion only covers tails l = 0; with nonzero off-diagonal entries it
    is applied only when every row satisfies k_ij < k_ii.
    """
    if any(H.l):
        return "undetermined", None
    r = H.r
    off = [(i, j) for i in range(r) for j in range(i + 1, r)]
    if all(H.k[i][j] == 0 for i, j in off):
        return "yes", prod(H.spec.moduli[i] ** H.k[i][i] for i in range(r))
    if all(H.k[i][j] < H.k[i][i] for i, j in off):
        return "no", None
    return "undetermined", None


def subgroup_equal(H1: CanonicalSubgroup, H2: CanonicalSubgroup) -> bool:
    if H1.spec != H2.spec:
        return False
    return (all(membership(x, H2) for x in H1.generators())
            and all(membership(x, H1) for x in H2.generators()))
