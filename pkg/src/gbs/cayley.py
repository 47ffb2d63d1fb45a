"""Witness paths in the Cayley graph certifying that a character lies in the
BNS invariant.

For a letter t with chi(t) > 0, [chi] is in the invariant as soon as every
letter y of the symmetrized alphabet admits a path p_y from t to y t whose
lowest chi-value stays strictly above min(chi(1), chi(y)).  Such paths are
checked exactly (normal forms of Gamma(S)) or semi-decided (G(n, m, r)), and
searched for by a bounded bidirectional breadth-first search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import (
    GammaSpec,
    GroupWord,
    TwistedSpec,
    UnknownSymbol,
    nf_from_word,
    nf_mul,
    syllable,
)
from .sigma import Character
from .twisted import (
    DEFAULT_BUDGET,
    EQUAL,
    UNEQUAL,
    abelian_image,
    affine_compose,
    affine_image,
    affine_syllable,
    twisted_equal,
)

VALID = "valid"
INVALID = "invalid"
UNKNOWN = "unknown"

Letter = tuple[str, int]


def letter_str(y: Letter) -> str:
    return y[0] if y[1] > 0 else f"{y[0]}^-1"


def parse_letter(text: str) -> Letter:
    w = GroupWord.parse(text.strip())
    if len(w.letters) != 1 or abs(w.letters[0][1]) != 1:
        raise ValueError(f"{text!r} is not a single generator letter")
    return w.letters[0]


def parse_steps(text: str) -> tuple[Letter, ...]:
    return tuple(GroupWord.parse(text).expanded())


@dataclass(frozen=True)
class CayleyPath:
    """The path from ``base`` spelling ``steps`` one letter at a time."""

    base: GroupWord
    steps: tuple[Letter, ...]

    @classmethod
    def parse(cls, base: str, steps: str) -> "CayleyPath":
        return cls(GroupWord.parse(base), parse_steps(steps))

    def endpoint(self) -> GroupWord:
        return self.base * GroupWord(self.steps)

    def steps_str(self) -> str:
        return " ".join(letter_str(y) for y in self.steps)

    def __str__(self) -> str:
        return f"({self.base}, {self.steps_str() or '1'})"


# ---------------------------------------------------------------------------
# character values
# ---------------------------------------------------------------------------

def _index(symbol: str, r: int) -> int | None:
    """Coordinate of a stable letter in the character vector (None for a)."""
    if symbol == "a":
        return None
    if symbol == "t":
        return 0
    if symbol == "s":
        return 1
    if symbol.startswith("t") and symbol[1:].isdigit() and 1 <= int(symbol[1:]) <= r:
        return int(symbol[1:]) - 1
    raise UnknownSymbol(f"no character coordinate for {symbol!r}")


def char_value(chi: Character, w: GroupWord) -> Fraction:
    total = Fraction(0)
    for s, e in w.letters:
        i = _index(s, chi.r)
        if i is not None:
            total += e * chi.values[i]
    return total


def nu_eval(chi: Character, p: CayleyPath) -> Fraction:
    """Minimum of chi over all vertices of the path, endpoints included."""
    v = char_value(chi, p.base)
    low = v
    for s, e in p.steps:
        i = _index(s, chi.r)
        if i is not None:
            v += e * chi.values[i]
        low = min(low, v)
    return low


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaBackend:
    """Exact word problem through normal forms."""

    spec: GammaSpec

    def alphabet(self) -> list[Letter]:
        return [(s, e) for s in self.spec.symbols() for e in (1, -1)]

    def equal(self, w1: GroupWord, w2: GroupWord) -> str:
        return EQUAL if nf_from_word(w1, self.spec) == nf_from_word(w2, self.spec) else UNEQUAL

    def start(self, w: GroupWord):
        return nf_from_word(w, self.spec)

    def step(self, key, y: Letter):
        return nf_mul(key, syllable(y[0], y[1], self.spec), self.spec)

    def chi_of(self, chi: Character, key) -> Fraction:
        return sum((x * v for x, v in zip(key.t_exp, chi.values)), Fraction(0))

    def character_rank(self) -> int:
        return self.spec.r


@dataclass(frozen=True)
class TwistedBackend:
    """Semi-decided word problem of G(n, m, r).

    Search states are images in Z^2 x Aff(Q); every candidate endpoint is
    confirmed by :func:`twisted_equal` before it is reported.
    """

    spec: TwistedSpec
    budget: int = DEFAULT_BUDGET

    def alphabet(self) -> list[Letter]:
        return [(s, e) for s in self.spec.symbols() for e in (1, -1)]

    def equal(self, w1: GroupWord, w2: GroupWord) -> str:
        return twisted_equal(w1, w2, self.spec, budget=self.budget).status

    def start(self, w: GroupWord):
        return abelian_image(w), affine_image(w, self.spec)

    def step(self, key, y: Letter):
        (ts, ss), aff = key
        s, e = y
        ab = (ts + e * (s == "t"), ss + e * (s == "s"))
        return ab, affine_compose(aff, affine_syllable(self.spec, s, e))

    def chi_of(self, chi: Character, key) -> Fraction:
        (ts, ss), _ = key
        return ts * chi.values[0] + ss * chi.values[1]

    def character_rank(self) -> int:
        return 2


Backend = Union[GammaBackend, TwistedBackend]


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _check_chi(b: Backend, chi: Character) -> None:
    if chi.r != b.character_rank():
        raise ValueError(f"character needs {b.character_rank()} values, got {chi.r}")


def verify_witness(b: Backend, chi: Character, t_letter: Letter, y: Letter,
                   p: CayleyPath) -> str:
    """``valid`` iff p runs from t to y t and stays strictly above the path (1, y)."""
    _check_chi(b, chi)
    t_word = GroupWord((t_letter,))
    if char_value(chi, t_word) <= 0:
        raise ValueError("the base letter must have positive character value")
    if p.base != t_word:
        raise ValueError("witness paths must start at the base letter")
    threshold = min(Fraction(0), char_value(chi, GroupWord((y,))))
    if not p.steps or nu_eval(chi, p) <= threshold:
        return INVALID
    status = b.equal(p.endpoint(), GroupWord((y, t_letter)))
    if status == EQUAL:
        return VALID
    if status == UNEQUAL:
        return INVALID
    return UNKNOWN


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InSigma:
    t_letter: Letter
    witnesses: tuple[tuple[Letter, CayleyPath], ...]


@dataclass(frozen=True)
class SearchUnknown:
    reason: str
    missing: tuple[Letter, ...] = ()


def choose_t_letter(b: Backend, chi: Character) -> Letter:
    """Letter of largest character value; earliest in the alphabet on ties."""
    best = None
    for y in b.alphabet():
        v = char_value(chi, GroupWord((y,)))
        if best is None or v > best[0]:
            best = (v, y)
    return best[1]


def _path_to(parents, key) -> list[Letter]:
    out = []
    while parents[key] is not None:
        key, y = parents[key]
        out.append(y)
    out.reverse()
    return out


def _search_letter(b: Backend, chi: Character, t_letter: Letter, y: Letter,
                   depth: int) -> CayleyPath | None:
    alphabet = b.alphabet()
    order = {x: i for i, x in enumerate(alphabet)}
    threshold = min(Fraction(0), char_value(chi, GroupWord((y,))))
    t_word = GroupWord((t_letter,))
    src = b.start(t_word)
    dst = b.start(GroupWord((y, t_letter)))
    # both trees only hold vertices strictly above the threshold
    fwd = {src: None}
    bwd = {dst: None}
    fwd_front, bwd_front = [src], [dst]
    df = db = 0
    rejected: set = set()
    while df + db < depth:
        forward = df <= db
        front, tree = (fwd_front, fwd) if forward else (bwd_front, bwd)
        nxt = []
        for key in front:
            for x in alphabet:
                # backward edges are walked with the inverse letter
                new = b.step(key, x if forward else (x[0], -x[1]))
                if new in tree or b.chi_of(chi, new) <= threshold:
                    continue
                tree[new] = (key, x)
                nxt.append(new)
        if forward:
            fwd_front, df = nxt, df + 1
        else:
            bwd_front, db = nxt, db + 1
        meets = [k for k in nxt if k in (bwd if forward else fwd) and k not in rejected]
        candidates = []
        for k in meets:
            head = _path_to(fwd, k)
            tail = list(reversed(_path_to(bwd, k)))
            steps = tuple(head + tail)
            if steps:
                candidates.append((len(steps), [order[s] for s in steps], steps, k))
        for _, _, steps, k in sorted(candidates, key=lambda c: (c[0], c[1])):
            path = CayleyPath(t_word, steps)
            if verify_witness(b, chi, t_letter, y, path) == VALID:
                return path
            rejected.add(k)
        if not fwd_front and not bwd_front:
            break
    return None


def witness_search(b: Backend, chi: Character, depth: int = 8):
    """Look for one witness per letter; ``InSigma`` or ``SearchUnknown``, never a no."""
    _check_chi(b, chi)
    if depth < 1:
        raise ValueError("depth must be positive")
    if chi.is_zero():
        raise ValueError("the zero character is not a point of the sphere")
    t_letter = choose_t_letter(b, chi)
    if char_value(chi, GroupWord((t_letter,))) <= 0:
        return SearchUnknown("no letter with positive character value")
    found = []
    missing = []
    for y in b.alphabet():
        p = _search_letter(b, chi, t_letter, y, depth)
        if p is None:
            missing.append(y)
        else:
            found.append((y, p))
    if missing:
        return SearchUnknown(f"no witness within depth {depth}", tuple(missing))
    return InSigma(t_letter, tuple(found))


# ---------------------------------------------------------------------------
# explicit catalog for G(n, m, r)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    """Witnesses valid whenever the character is negative on ``negative_on``."""

    negative_on: str
    t_letter: Letter
    paths: tuple[tuple[Letter, CayleyPath], ...]


def builtin_witnesses(spec: TwistedSpec) -> list[CatalogEntry]:
    n, m, r = spec.n, spec.m, spec.r_twist

    def path(base: str, steps: str) -> CayleyPath:
        return CayleyPath.parse(base, steps)

    t_side = CatalogEntry("t", ("t", -1), (
        (("a", 1), path("t^-1", f"a^{n}")),
        (("a", -1), path("t^-1", f"a^{-n}")),
        (("t", 1), path("t^-1", "t")),
        (("t", -1), path("t^-1", "t^-1")),
        (("s", 1), path("t^-1", f"a^{r} s")),
        (("s", -1), path("t^-1", f"s^-1 a^{-r}")),
    ))
    s_side = CatalogEntry("s", ("s", -1), (
        (("a", 1), path("s^-1", f"a^{m}")),
        (("a", -1), path("s^-1", f"a^{-m}")),
        (("t", 1), path("s^-1", f"a^{-r} t")),
        (("t", -1), path("s^-1", f"t^-1 a^{r}")),
        (("s", 1), path("s^-1", "s")),
        (("s", -1), path("s^-1", "s^-1")),
    ))
    return [t_side, s_side]
