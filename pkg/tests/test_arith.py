import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gbs.arith import (
    GammaSpec,
    GroupWord,
    TwistedSpec,
    UnknownSymbol,
    WordSyntaxError,
    a_index,
    element,
    element_to_word,
    identity,
    is_nsmooth,
    nf_commutator,
    nf_from_word,
    nf_inv,
    nf_mul,
    nf_pow,
    nfree_part,
    parse_word_list,
    prime_factors,
)

from helpers import random_element, random_word

G6 = GammaSpec.gamma(6)


def E(t, u):
    return element(G6, t, Fraction(u))


@pytest.mark.parametrize("s,n,expected", [(45, 6, 5), (7, 10, 7), (12, 6, 1)])
def test_nfree_part_examples(s, n, expected):
    assert nfree_part(s, n) == expected


@given(st.integers(1, 10**6), st.integers(2, 500))
def test_nfree_part_properties(s, n):
    m = nfree_part(s, n)
    assert s % m == 0
    assert all(n % p == 0 for p, _ in prime_factors(s // m))
    from math import gcd
    assert gcd(m, n) == 1
    # s | m n^s, checked without building n^s: s/m is n-smooth
    assert is_nsmooth(s // m, n)


def test_gamma_spec_shapes():
    assert G6.moduli == (2, 3) and G6.r == 2 and G6.n == 6
    assert GammaSpec.gamma(36).moduli == (4, 9)
    assert GammaSpec.gamma(30).r == 3
    g = GammaSpec.general([2, 9, 5])
    assert g.n == 90 and g.describe() == "gammaS:2,9,5"
    with pytest.raises(ValueError):
        GammaSpec.general([2, 4])
    with pytest.raises(ValueError):
        GammaSpec.general([1, 1])
    with pytest.raises(ValueError):
        TwistedSpec(2, 4, 1)


@pytest.mark.parametrize("word,t_exp,tail", [
    ("a t1", (1, 0), Fraction(1, 2)),
    ("t1 a t1^-1", (0, 0), 2),
    ("t1 t2 a t2^-1 t1^-1", (0, 0), 6),
])
def test_nf_from_word_examples(word, t_exp, tail):
    assert nf_from_word(GroupWord.parse(word), G6) == E(t_exp, tail)


def test_nf_from_word_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        nf_from_word(GroupWord.parse("t3 a"), G6)
    with pytest.raises(WordSyntaxError):
        GroupWord.parse("t1 b")


def test_nf_mul_examples():
    assert nf_mul(E((1, 0), Fraction(1, 2)), E((-1, 0), 0), G6) == E((0, 0), 1)
    assert nf_mul(E((0, 1), 1), E((0, 1), 1), G6) == E((0, 2), Fraction(4, 3))
    e = E((2, -1), Fraction(5, 12))
    assert nf_mul(e, identity(G6), G6) == e


def test_nf_inv_examples():
    assert nf_inv(E((1, 0), Fraction(1, 2)), G6) == E((-1, 0), -1)
    assert nf_inv(identity(G6), G6) == identity(G6)
    assert nf_inv(E((0, 1), 1), G6) == E((0, -1), -3)


@pytest.mark.parametrize("j,tail", [(0, 1), (1, 6), (-1, Fraction(1, 6))])
def test_a_index(j, tail):
    assert a_index(j, G6) == E((0, 0), tail)


def test_a_index_matches_conjugating_word():
    w = GroupWord.parse("t1^-1 t2^-1 a t2 t1")
    assert nf_from_word(w, G6) == a_index(-1, G6)


@pytest.mark.parametrize("n", [2, 6, 10, 12, 30, 36])
def test_group_axioms_random(n):
    g = GammaSpec.gamma(n)
    rng = random.Random(n)
    for _ in range(200):
        x, y, z = (random_element(rng, g) for _ in range(3))
        assert nf_mul(nf_mul(x, y, g), z, g) == nf_mul(x, nf_mul(y, z, g), g)
        assert nf_mul(x, nf_inv(x, g), g) == identity(g)
        assert nf_mul(nf_inv(x, g), x, g) == identity(g)
        w1, w2 = random_word(rng, g), random_word(rng, g)
        assert nf_from_word(w1 * w2, g) == nf_mul(nf_from_word(w1, g), nf_from_word(w2, g), g)
        assert is_nsmooth(nf_mul(x, y, g).tail.denominator, g.n)


@pytest.mark.parametrize("g", [GammaSpec.gamma(6), GammaSpec.gamma(30), GammaSpec.general([2, 9, 5])])
def test_defining_relators_vanish(g):
    for i in range(1, g.r + 1):
        for j in range(1, g.r + 1):
            w = GroupWord.parse(f"t{i} t{j} t{i}^-1 t{j}^-1")
            assert nf_from_word(w, g).is_identity()
        w = GroupWord.parse(f"t{i} a t{i}^-1 a^{-g.moduli[i - 1]}")
        assert nf_from_word(w, g).is_identity()


def test_pow_and_commutator():
    rng = random.Random(5)
    for _ in range(100):
        x = random_element(rng, G6)
        k = rng.randint(-5, 5)
        expected = identity(G6)
        for _ in range(abs(k)):
            expected = nf_mul(expected, x if k > 0 else nf_inv(x, G6), G6)
        assert nf_pow(x, k, G6) == expected
    t1, t2 = E((1, 0), 0), E((0, 1), 0)
    assert nf_commutator(t1, t2, G6).is_identity()


def test_element_to_word_round_trip():
    rng = random.Random(11)
    for n in (6, 30, 36):
        g = GammaSpec.gamma(n)
        for _ in range(50):
            e = random_element(rng, g)
            assert nf_from_word(element_to_word(e, g), g) == e


def test_word_parsing():
    w = GroupWord.parse("t1^2 a^-3 t2 1")
    assert w.letters == (("t1", 2), ("a", -3), ("t2", 1))
    assert str(w) == "t1^2 a^-3 t2"
    assert len(w) == 6
    assert (w * w.inverse()).exponent_sum("t1") == 0
    assert [str(x) for x in parse_word_list("t1^2, t2, a^5")] == ["t1^2", "t2", "a^5"]
    assert GroupWord.parse("t a^0").letters == (("t", 1),)


def test_t_alias_for_rank_one():
    g = GammaSpec.gamma(2)
    assert nf_from_word(GroupWord.parse("t a t^-1"), g) == element(g, (0,), 2)


def test_element_rejects_non_nadic_tail():
    with pytest.raises(ValueError):
        element(G6, (0, 0), Fraction(1, 5))


@settings(max_examples=200)
@given(st.lists(st.tuples(st.sampled_from(["a", "t1", "t2"]), st.integers(-3, 3)), max_size=8))
def test_inverse_word_is_inverse_element(letters):
    w = GroupWord(tuple(letters))
    assert nf_mul(nf_from_word(w, G6), nf_from_word(w.inverse(), G6), G6).is_identity()
