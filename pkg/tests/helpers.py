"""Random generators shared by the test modules (all seeded)."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from math import gcd, prod

import numpy as np

from gbs.arith import GammaSpec, GroupWord, element
from gbs.sphere import Direction, Hemisphere, _rank, dot, find_open_hemisphere, primitive
from gbs.subgroup import CanonicalSubgroup, canonicalize


def random_tail(rng: random.Random, g: GammaSpec) -> Fraction:
    den = prod(rng.choice(g.moduli) for _ in range(rng.randint(0, 2)))
    return Fraction(rng.randint(-30, 30), den)


def random_element(rng: random.Random, g: GammaSpec):
    return element(g, [rng.randint(-3, 3) for _ in range(g.r)], random_tail(rng, g))


def random_word(rng: random.Random, g: GammaSpec, length: int = 6) -> GroupWord:
    syms = g.symbols()
    return GroupWord(tuple((rng.choice(syms), rng.choice([-2, -1, 1, 2]))
                           for _ in range(rng.randint(1, length))))


def random_canonical(rng: random.Random, g: GammaSpec, max_index: int = 500) -> CanonicalSubgroup:
    """Random canonical data (k, l, m) with index <= max_index; m, l made consistent."""
    r = g.r
    while True:
        diag = [rng.choice([1, 1, 2, 3, 4]) for _ in range(r)]
        m = rng.choice([c for c in range(1, 40) if gcd(c, g.n) == 1])
        if prod(diag) * m > max_index:
            continue
        k = [[0] * r for _ in range(r)]
        for i in range(r):
            k[i][i] = diag[i]
            for j in range(i + 1, r):
                k[i][j] = rng.randrange(diag[j])
        l = [rng.randrange(m) for _ in range(r)]
        # keep only data whose commutators are divisible by m, i.e. genuinely canonical
        H = CanonicalSubgroup(g, k, l, m)
        C = canonicalize(H.generators(), g)
        if C == H:
            return H


# brute-force grid oracle: coefficients p/q with q <= 8 and 0 <= p <= 4q, scaled by 840
_GRID = sorted({Fraction(p, q) for q in range(1, 9) for p in range(0, 4 * q + 1)})
_SCALED = np.array([int(v * 840) for v in _GRID], dtype=np.int64)
_TUPLES = {k: np.array(list(product(_SCALED, repeat=k)), dtype=np.int64) for k in (2, 3)}


def grid_cone_member(x: Direction, A) -> bool:
    T = _TUPLES[len(A)]
    M = np.array([a.coords for a in A], dtype=np.int64)
    Y = T @ M
    xv = np.array(x.coords, dtype=np.int64)
    d = len(xv)
    parallel = np.ones(len(Y), dtype=bool)
    for i in range(d):
        for j in range(i + 1, d):
            parallel &= Y[:, i] * xv[j] == Y[:, j] * xv[i]
    positive = Y @ xv > 0
    return bool(np.any(parallel & positive))


def _random_generators(rng, d, k):
    while True:
        A = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(k)]
        if any(not any(a) for a in A):
            continue
        A = [primitive(a) for a in A]
        if len(set(A)) == k and find_open_hemisphere(A) is not None:
            return A


def _grid_coeffs(rng, k, allow_negative):
    while True:
        t = [rng.choice(_GRID) for _ in range(k)]
        if allow_negative:
            t[rng.randrange(k)] = -rng.choice(_GRID[1:])
        if any(t):
            return t


def _det(rows):
    if len(rows) == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    a, b, c = rows
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def cone_member_instances(count, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = 2 if len(out) % 2 == 0 else 3
        kind = rng.choice(["pos", "pos", "neg-basis", "neg-antipodal"])
        if kind == "neg-basis":
            A = _random_generators(rng, d, d)
            if _det([a.coords for a in A]) == 0 or abs(_det([a.coords for a in A])) > 8:
                continue
            t = _grid_coeffs(rng, d, allow_negative=True)
        else:
            k = 3 if d == 3 else rng.choice([2, 3])
            A = _random_generators(rng, d, k)
            t = _grid_coeffs(rng, k, allow_negative=False)
        x = [sum(ti * a.coords[i] for ti, a in zip(t, A)) for i in range(d)]
        if not any(x):
            continue
        x = primitive(x)
        if kind == "neg-antipodal":
            x = primitive([-c for c in x.coords])
        out.append((x, A))
    return out


def random_polytope(rng, r):
    """Normals all positive on an interior point u, so u is inside the cone."""
    u = [rng.randint(1, 3) for _ in range(r)]
    normals = []
    while len(normals) < rng.randint(r, r + 3):
        w = [rng.randint(-3, 3) for _ in range(r)]
        if any(w) and dot(w, u) > 0:
            normals.append(primitive(w))
    normals = list(dict.fromkeys(normals))
    if _rank([[Fraction(x) for x in w.coords] for w in normals]) < r:
        return random_polytope(rng, r)
    return primitive(u), [Hemisphere(w) for w in normals]
