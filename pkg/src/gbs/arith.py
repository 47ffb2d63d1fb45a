"""Exact arithmetic in Z[1/n] and normal forms for the groups Gamma(S).

An element of Gamma(S) = Z[1/n] x| Z^r is stored as ``t_1^a_1 ... t_r^a_r a^u``
with integer exponents ``a_i`` and an n-adic rational tail ``u``.  The relation
``t_i a t_i^-1 = a^{n_i}`` gives the product law

    (alpha, u) * (beta, u') = (alpha + beta, u * prod n_i^-beta_i + u').
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence


class UnknownSymbol(ValueError):
    """A word uses a generator the ambient group does not have."""


class WordSyntaxError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def prime_factors(n: int) -> list[tuple[int, int]]:
    """Return ``[(p, e), ...]`` with ascending primes, by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def nfree_part(s: int, n: int) -> int:
    """Largest divisor of ``s`` coprime to ``n``.

    The result ``m`` satisfies ``s | m * n**s`` (every prime of s/m divides n).
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    g = gcd(s, n)
    while g > 1:
        s //= g
        g = gcd(s, n)
    return s


def is_nsmooth(d: int, n: int) -> bool:
    """True when every prime divisor of ``d`` divides ``n``."""
    return nfree_part(d, n) == 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    """Non-negative generator of the subgroup of Q spanned by ``values``."""
    num, den = 0, 1
    for v in values:
        v = Fraction(v)
        if v == 0:
            continue
        num = gcd(num, v.numerator)
        den = den * v.denominator // gcd(den, v.denominator)
    if num == 0:
        return Fraction(0)
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaSpec:
    """The group Gamma(S) with stable letters t_1..t_r acting by the moduli.

    ``kind`` is ``"gamma"`` for Gamma_n (prime-power moduli, ascending primes)
    and ``"gammaS"`` for an arbitrary pairwise coprime set S.
    """

    moduli: tuple[int, ...]
    kind: str = "gammaS"

    def __post_init__(self):
        moduli = tuple(int(x) for x in self.moduli)
        object.__setattr__(self, "moduli", moduli)
        if not moduli:
            raise ValueError("at least one modulus is required")
        if any(x < 1 for x in moduli):
            raise ValueError("moduli must be positive")
        if max(moduli) < 2:
            raise ValueError("some modulus must be >= 2")
        for i, x in enumerate(moduli):
            for y in moduli[i + 1:]:
                if gcd(x, y) != 1:
                    raise ValueError(f"moduli {x} and {y} are not coprime")
        if self.kind not in ("gamma", "gammaS"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "gamma":
            primes = []
            for x in moduli:
                f = prime_factors(x)
                if len(f) != 1:
                    raise ValueError(f"{x} is not a prime power")
                primes.append(f[0][0])
            if primes != sorted(primes):
                raise ValueError("primes must ascend")

    @classmethod
    def gamma(cls, n: int) -> "GammaSpec":
        if n < 2:
            raise ValueError("Gamma_n needs n >= 2")
        return cls(tuple(p**e for p, e in prime_factors(n)), "gamma")

    @classmethod
    def general(cls, moduli: Sequence[int]) -> "GammaSpec":
        return cls(tuple(moduli), "gammaS")

    @property
    def r(self) -> int:
        return len(self.moduli)

    @property
    def n(self) -> int:
        return prod(self.moduli)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(prime_factors(x)[0][0] for x in self.moduli)

    def symbols(self) -> list[str]:
        return ["a"] + [f"t{i + 1}" for i in range(self.r)]

    def describe(self) -> str:
        if self.kind == "gamma":
            return f"gamma:{self.n}"
        return "gammaS:" + ",".join(map(str, self.moduli))


@dataclass(frozen=True)
class TwistedSpec:
    """G(n, m, r) = <a, t, s | t a t^-1 = a^n, s a s^-1 = a^m, t s t^-1 s^-1 = a^r>."""

    n: int
    m: int
    r_twist: int = 0

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise ValueError("n and m must be >= 2")
        if gcd(self.n, self.m) != 1:
            raise ValueError("n and m must be coprime")

    def symbols(self) -> list[str]:
        return ["a", "t", "s"]

    def describe(self) -> str:
        return f"twisted:{self.n},{self.m},{self.r_twist}"


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"^(a|t[1-9]?|s)(?:\^([+-]?\d+))?$")


@dataclass(frozen=True)
class GroupWord:
    """A word as a tuple of ``(symbol, exponent)`` syllables, exponents nonzero."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "letters", tuple((s, int(e)) for s, e in self.letters if e != 0)
        )

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse whitespace-separated ``sym^exp`` tokens, e.g. ``"t1 a^-2"``."""
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            mt = _TOKEN.match(tok)
            if mt is None:
                raise WordSyntaxError(f"bad token {tok!r}")
            exp = int(mt.group(2)) if mt.group(2) is not None else 1
            letters.append((mt.group(1), exp))
        return cls(tuple(letters))

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[str, int]]) -> "GroupWord":
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def expanded(self) -> list[tuple[str, int]]:
        """One ``(symbol, +-1)`` entry per letter."""
        out = []
        for s, e in self.letters:
            unit = 1 if e > 0 else -1
            out.extend([(s, unit)] * abs(e))
        return out

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def exponent_sum(self, symbol: str) -> int:
        return sum(e for s, e in self.letters if s == symbol)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)


def parse_word_list(text: str) -> list[GroupWord]:
    """Comma-separated list of words."""
    return [GroupWord.parse(part) for part in text.split(",") if part.strip()]


# ---------------------------------------------------------------------------
# normal forms in Gamma(S)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    """Normal form ``t_1^a_1 ... t_r^a_r a^tail``."""

    t_exp: tuple[int, ...]
    tail: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "t_exp", tuple(int(x) for x in self.t_exp))
        object.__setattr__(self, "tail", Fraction(self.tail))

    def is_identity(self) -> bool:
        return self.tail == 0 and not any(self.t_exp)

    def __str__(self) -> str:
        parts = [f"t{i + 1}^{x}" for i, x in enumerate(self.t_exp) if x]
        if self.tail:
            parts.append(f"a^{self.tail}")
        return " ".join(parts) or "1"


def _scale(g: GammaSpec, exps: Sequence[int]) -> Fraction:
    """prod n_i^exps_i as an exact rational."""
    num, den = 1, 1
    for n_i, e in zip(g.moduli, exps):
        if e >= 0:
            num *= n_i**e
        else:
            den *= n_i ** (-e)
    return Fraction(num, den)


def check_nadic(u: Fraction, g: GammaSpec) -> None:
    if not is_nsmooth(u.denominator, g.n):
        raise ValueError(f"{u} is not in Z[1/{g.n}]")


def identity(g: GammaSpec) -> Element:
    return Element((0,) * g.r, Fraction(0))


def element(g: GammaSpec, t_exp: Sequence[int], tail=0) -> Element:
    """Build a validated element of ``g``."""
    if len(t_exp) != g.r:
        raise ValueError(f"expected {g.r} t-exponents")
    e = Element(tuple(t_exp), Fraction(tail))
    check_nadic(e.tail, g)
    return e


def nf_mul(e1: Element, e2: Element, g: GammaSpec) -> Element:
    t = tuple(x + y for x, y in zip(e1.t_exp, e2.t_exp))
    return Element(t, e1.tail * _scale(g, [-b for b in e2.t_exp]) + e2.tail)


def nf_inv(e: Element, g: GammaSpec) -> Element:
    return Element(tuple(-x for x in e.t_exp), -e.tail * _scale(g, e.t_exp))


def nf_pow(e: Element, k: int, g: GammaSpec) -> Element:
    if k < 0:
        e, k = nf_inv(e, g), -k
    result = identity(g)
    base = e
    while k:
        if k & 1:
            result = nf_mul(result, base, g)
        base = nf_mul(base, base, g)
        k >>= 1
    return result


def nf_commutator(x: Element, y: Element, g: GammaSpec) -> Element:
    """x y x^-1 y^-1."""
    return nf_mul(nf_mul(x, y, g), nf_mul(nf_inv(x, g), nf_inv(y, g), g), g)


def generator(symbol: str, g: GammaSpec) -> Element:
    if symbol == "a":
        return Element((0,) * g.r, Fraction(1))
    if symbol == "t" and g.r == 1:
        symbol = "t1"
    if symbol.startswith("t") and symbol[1:].isdigit():
        i = int(symbol[1:])
        if 1 <= i <= g.r:
            return Element(tuple(int(j == i - 1) for j in range(g.r)), Fraction(0))
    raise UnknownSymbol(f"{symbol!r} is not a generator of {g.describe()}")


def syllable(symbol: str, exp: int, g: GammaSpec) -> Element:
    base = generator(symbol, g)
    if symbol == "a":
        return Element(base.t_exp, Fraction(exp))
    return Element(tuple(x * exp for x in base.t_exp), Fraction(0))


def nf_from_word(w: GroupWord, g: GammaSpec) -> Element:
    """Normal form of ``w`` by left-to-right folding with :func:`nf_mul`."""
    result = identity(g)
    for s, e in w.letters:
        result = nf_mul(result, syllable(s, e, g), g)
    return result


def a_index(j: int, g: GammaSpec) -> Element:
    """a_j = (t_1...t_r)^j a (t_1...t_r)^-j, i.e. a^(n^j)."""
    return Element((0,) * g.r, Fraction(g.n) ** j)


def element_to_word(e: Element, g: GammaSpec) -> GroupWord:
    """A word representing ``e``.

    A tail p/q with q | n^k is written as (t_1...t_r)^-k a^(p n^k / q) (t_1...t_r)^k.
    """
    letters = [(f"t{i + 1}", x) for i, x in enumerate(e.t_exp)]
    q = e.tail.denominator
    k = 0
    while (g.n**k) % q:
        k += 1
    ts = [f"t{i + 1}" for i in range(g.r)]
    letters += [(t, -k) for t in ts]
    letters.append(("a", int(e.tail * g.n**k)))
    letters += [(t, k) for t in ts]
    return GroupWord(tuple(letters))
