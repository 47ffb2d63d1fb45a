import random
from fractions import Fraction

from gbs.lp import fourier_motzkin, simplex_feasible


def _satisfies_ineq(A, b, x):
    return all(sum(Fraction(a) * xi for a, xi in zip(row, x)) >= bi for row, bi in zip(A, b))


def test_fourier_motzkin_small():
    assert fourier_motzkin([[1, 0], [0, 1]], [1, 1]) == [1, 1]
    assert fourier_motzkin([[1, 0], [-1, 0]], [1, 1]) is None
    x = fourier_motzkin([[1, 0], [1, 3], [2, 1]], [1, 1, 1])
    assert _satisfies_ineq([[1, 0], [1, 3], [2, 1]], [1, 1, 1], x)


def test_fourier_motzkin_fractional_interval():
    # 2x >= 1 and -2x >= -1 forces x = 1/2 exactly
    assert fourier_motzkin([[2], [-2]], [1, -1]) == [Fraction(1, 2)]


def test_simplex_small():
    assert simplex_feasible([[1, 0], [0, 1]], [1, 1]) == [1, 1]
    assert simplex_feasible([[1, 0], [0, 1]], [-1, 0]) is None
    x = simplex_feasible([[1, 1, 1]], [0])
    assert x == [0, 0, 0]


def test_methods_agree_on_random_systems():
    rng = random.Random(2)
    for _ in range(150):
        d = rng.randint(1, 3)
        rows = [[rng.randint(-4, 4) for _ in range(d)] for _ in range(rng.randint(1, 6))]
        b = [rng.randint(-3, 3) for _ in rows]
        fm = fourier_motzkin(rows, b)
        # A x >= b as x = x+ - x-, slack s >= 0
        A = [row + [-v for v in row] + [-int(i == j) for j in range(len(rows))]
             for i, row in enumerate(rows)]
        sx = simplex_feasible(A, b)
        assert (fm is None) == (sx is None)
        if fm is not None:
            assert _satisfies_ineq(rows, b, fm)
            x = [sx[i] - sx[d + i] for i in range(d)]
            assert _satisfies_ineq(rows, b, x)
