"""Exact geometry on the character sphere.

Points of the sphere are rays through rational vectors, stored as primitive
integer vectors (:class:`Direction`).  Nothing is ever normalised to unit
length: hemispheres, cones and gnomonic charts only need inner products.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .lp import fourier_motzkin, simplex_feasible

OPEN = "open"
CLOSED = "closed"
SIGMA_COMPLEMENT = "sigma-complement"
USER_ASSERTED = "user-asserted"

# Fourier-Motzkin is used up to this dimension, the simplex method above it
FM_MAX_DIM = 4


class ZeroVector(ValueError):
    pass


class NotInHemisphere(ValueError):
    pass


class Unbounded(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Direction:
    """A rational point of the sphere, as a primitive integer vector."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        object.__setattr__(self, "coords", coords)
        if not any(coords):
            raise ZeroVector("the zero vector is not a sphere point")
        g = 0
        for x in coords:
            g = gcd(g, x)
        if g != 1:
            raise ValueError(f"{coords} is not primitive; use primitive()")

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


def primitive(v: Sequence) -> Direction:
    """Positive rescaling of a rational vector to a primitive integer vector."""
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise ZeroVector("the zero vector is not a sphere point")
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return Direction(tuple(x // g for x in ints))


def dot(u: Iterable, v: Iterable):
    return sum(x * y for x, y in zip(u, v))


@dataclass(frozen=True)
class Hemisphere:
    normal: Direction
    openness: str = CLOSED

    def __post_init__(self):
        if self.openness not in (OPEN, CLOSED):
            raise ValueError(f"openness must be {OPEN!r} or {CLOSED!r}")

    def contains(self, x: Direction) -> bool:
        d = dot(x, self.normal)
        return d > 0 if self.openness == OPEN else d >= 0


@dataclass(frozen=True)
class InducedMap:
    """Action of an automorphism on characters.

    Row i of ``matrix`` holds the image of the i-th abelianization generator,
    so a character vector x is sent to primitive(M x) (the transpose of the
    column-convention matrix, applied to x).
    """

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        if any(len(row) != len(mat) for row in mat):
            raise ValueError("induced map matrix must be square")
        if _det([[Fraction(x) for x in row] for row in mat]) == 0:
            raise ValueError("induced map matrix must be invertible")

    @classmethod
    def identity(cls, r: int) -> "InducedMap":
        return cls(tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))

    @property
    def r(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class RInftyCertificate:
    points: tuple[Direction, ...]
    witness: Direction
    provenance: str

    def check(self) -> bool:
        return bool(self.points) and all(dot(p, self.witness) > 0 for p in self.points)


@dataclass(frozen=True)
class CertificateFailure:
    """``reason`` is ``"empty"`` or ``"no-hemisphere"``."""

    reason: str
    detail: str = ""


# ---------------------------------------------------------------------------
# linear algebra helpers
# ---------------------------------------------------------------------------

def _det(mat: list[list[Fraction]]) -> Fraction:
    a = [list(row) for row in mat]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def _rank(rows: list[list[Fraction]]) -> int:
    a = [list(r) for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system by Gauss-Jordan elimination."""
    n = len(mat)
    a = [list(row) + [b] for row, b in zip(mat, rhs)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# hemispheres and cones
# ---------------------------------------------------------------------------

def _check_dims(points: Sequence[Direction]) -> int:
    dims = {len(p) for p in points}
    if len(dims) != 1:
        raise ValueError("all directions must have the same dimension")
    return dims.pop()


def find_open_hemisphere(points: Sequence[Direction]) -> Direction | None:
    """A v with <p, v> > 0 for every p, or None if no open hemisphere holds them."""
    if not points:
        raise ValueError("need at least one point")
    r = _check_dims(points)
    rows = [list(p.coords) for p in points]
    if r <= FM_MAX_DIM:
        sol = fourier_motzkin(rows, [1] * len(rows))
    else:
        # v = v_plus - v_minus, <p, v> - slack = 1, all variables >= 0
        A = [row + [-x for x in row] + [-int(i == j) for j in range(len(rows))]
             for i, row in enumerate(rows)]
        raw = simplex_feasible(A, [1] * len(rows))
        sol = None if raw is None else [raw[i] - raw[r + i] for i in range(r)]
    if sol is None or not any(sol):
        return None
    v = primitive(sol)
    if not all(dot(p, v) > 0 for p in points):
        raise AssertionError("hemisphere witness failed verification")
    return v


def cone_member(x: Direction, A: Sequence[Direction]) -> bool:
    """Is x a nonnegative (hence positive, as x != 0) combination of A?"""
    if not A:
        raise ValueError("need at least one generator")
    if find_open_hemisphere(A) is None:
        raise NotInHemisphere("generators do not lie in a common open hemisphere")
    r = _check_dims(list(A) + [x])
    mat = [[a.coords[i] for a in A] for i in range(r)]
    return simplex_feasible(mat, list(x.coords)) is not None


def gnomonic(v: Direction, x: Direction) -> tuple[Fraction, ...]:
    """Central projection of x onto the plane <., v> = |v|^2."""
    d = dot(x, v)
    if d <= 0:
        raise NotInHemisphere(f"{x} is not in the open hemisphere around {v}")
    s = Fraction(dot(v, v), d)
    return tuple(s * c for c in x.coords)


def gnomonic_inv(v: Direction, point: Sequence) -> Direction:
    if dot(point, v) <= 0:
        raise NotInHemisphere("point is not on the positive side of the chart")
    return primitive(point)


# ---------------------------------------------------------------------------
# polytopes
# ---------------------------------------------------------------------------

def _zero_set(ray, rows) -> frozenset[int]:
    return frozenset(i for i, w in enumerate(rows) if dot(ray, w) == 0)


def _extreme_rays(rows: list[list[Fraction]], r: int) -> list[list[Fraction]]:
    """Extreme rays of the pointed cone {x : w.x >= 0 for w in rows} (double description).

    ``rows`` must have rank r.  Starts from r independent rows, whose cone is
    simplicial, and adds the others one at a time, keeping the combinatorial
    adjacency test.
    """
    basis_idx: list[int] = []
    for i in range(len(rows)):
        if _rank([rows[j] for j in basis_idx + [i]]) == len(basis_idx) + 1:
            basis_idx.append(i)
        if len(basis_idx) == r:
            break
    B = [rows[i] for i in basis_idx]
    rays = []
    for c in range(r):
        e = [Fraction(int(i == c)) for i in range(r)]
        rays.append(_solve(B, e))
    done = list(basis_idx)
    for i in range(len(rows)):
        if i in basis_idx:
            continue
        w = rows[i]
        vals = [dot(ray, w) for ray in rays]
        plus = [k for k, v in enumerate(vals) if v > 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        minus = [k for k, v in enumerate(vals) if v < 0]
        active = [rows[j] for j in done]
        zsets = [_zero_set(ray, active) for ray in rays]
        new = [rays[k] for k in plus + zero]
        for p in plus:
            for q in minus:
                common = zsets[p] & zsets[q]
                if len(common) < r - 2:
                    continue
                if any(common <= zsets[o] for o in range(len(rays)) if o not in (p, q)):
                    continue
                a, b = vals[p], -vals[q]
                new.append([b * x + a * y for x, y in zip(rays[p], rays[q])])
        rays = new
        done.append(i)
    return rays


def polytope_vertices(hemis: Sequence[Hemisphere], chart: Direction) -> list[Direction]:
    """Vertices of the intersection of closed hemispheres, read through a chart.

    In the chart the polytope is {P : <P, v> = |v|^2, <P, w_i> >= 0}; its
    vertices are the extreme rays of the cone cut out by the w_i.  Raises
    :class:`Unbounded` when that cone leaves the open hemisphere of the chart.
    """
    if not hemis:
        raise Unbounded("no hemispheres: the whole sphere is not a polytope")
    r = len(chart)
    if any(len(h.normal) != r for h in hemis):
        raise ValueError("hemisphere normals and chart must have the same dimension")
    if any(h.openness != CLOSED for h in hemis):
        raise ValueError("polytopes are cut out by closed hemispheres")
    rows = [[Fraction(x) for x in h.normal.coords] for h in hemis]
    if _rank(rows) < r:
        raise Unbounded("the hemispheres contain a great subsphere")
    rays = _extreme_rays(rows, r)
    out = set()
    for ray in rays:
        if dot(ray, chart.coords) <= 0:
            raise Unbounded(f"vertex {primitive(ray)} lies outside the chart hemisphere")
        out.add(gnomonic_inv(chart, gnomonic(chart, primitive(ray))))
    return sorted(out)


@dataclass(frozen=True)
class SpherePolytope:
    hemispheres: tuple[Hemisphere, ...]
    chart: Direction
    vertices: tuple[Direction, ...] = field(default=())

    @classmethod
    def build(cls, hemis: Sequence[Hemisphere], chart: Direction) -> "SpherePolytope":
        return cls(tuple(hemis), chart, tuple(polytope_vertices(hemis, chart)))


# ---------------------------------------------------------------------------
# induced maps and certificates
# ---------------------------------------------------------------------------

def induced_dir(M: InducedMap, x: Direction) -> Direction:
    mat = M.matrix
    r = M.r
    return primitive([sum(mat[i][j] * x.coords[j] for j in range(r)) for i in range(r)])


def set_invariant(S: Sequence[Direction], maps: Sequence[InducedMap]) -> bool:
    target = set(S)
    return all({induced_dir(M, x) for x in S} == target for M in maps)


def polytope_invariant(K: SpherePolytope, maps: Sequence[InducedMap]) -> bool:
    return set_invariant(K.vertices, maps)


def map_hemisphere(M: InducedMap, h: Hemisphere) -> Hemisphere:
    """Image of a hemisphere: <x, w> >= 0 becomes <y, M^-T w> >= 0 for y = M x."""
    inv = _inverse([[Fraction(x) for x in row] for row in M.matrix])
    w = h.normal.coords
    return Hemisphere(primitive([sum(inv[j][i] * w[j] for j in range(M.r)) for i in range(M.r)]),
                      h.openness)


def _inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    cols = [_solve(mat, [Fraction(int(i == c)) for i in range(n)]) for c in range(n)]
    return [[cols[c][i] for c in range(n)] for i in range(n)]


def rinfty_certificate(points: Sequence[Direction], provenance: str = USER_ASSERTED):
    """Hemisphere certificate for a finite invariant point set, or a failure record.

    Invariance is not checked here: complements of the invariant coming from
    automorphism-invariance carry ``sigma-complement``; anything else is
    ``user-asserted``.
    """
    if provenance not in (SIGMA_COMPLEMENT, USER_ASSERTED):
        raise ValueError(f"unknown provenance {provenance!r}")
    if not points:
        return CertificateFailure("empty", "the point set must be nonempty")
    pts = tuple(dict.fromkeys(points))
    v = find_open_hemisphere(pts)
    if v is None:
        return CertificateFailure("no-hemisphere", "no open hemisphere contains the points")
    return RInftyCertificate(pts, v, provenance)


def hull_map_property(A: Sequence[Direction], M: InducedMap, samples: int,
                      rng: random.Random | None = None) -> bool:
    """Sample positive combinations of A and check their images stay in the hull of M(A)."""
    rng = rng or random.Random(0)
    image = [induced_dir(M, a) for a in A]
    if find_open_hemisphere(A) is None or find_open_hemisphere(image) is None:
        raise NotInHemisphere("A and its image must each lie in an open hemisphere")
    for _ in range(samples):
        coeffs = [Fraction(rng.randint(1, 12), rng.randint(1, 8)) for _ in A]
        c = primitive([sum(t * a.coords[i] for t, a in zip(coeffs, A)) for i in range(len(A[0]))])
        if not cone_member(induced_dir(M, c), image):
            return False
    return True
