"""Bounded equality for G(n, m, r) = <a, t, s | tat^-1=a^n, sas^-1=a^m, tst^-1s^-1=a^r>.

No normal form for G(n, m, r) is assumed.  Equality is only ever reported when
a sequence of relator moves and free reductions turns ``w1 w2^-1`` into the
empty word; inequality is reported only when a homomorphic image separates the
two words.  Everything else is ``unknown``.

Two move searches are used, both made of genuine relator applications:

* a directed *collection* pass that pushes positive stable letters right and
  negative ones left, e.g. ``t a^k -> a^(nk) t`` (``|k|`` applications of the
  first relator) or ``t s -> a^r s t`` (one application of the third);
* a bidirectional breadth-first search over arbitrary relator insertions and
  deletions, capped by a node budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import GroupWord, TwistedSpec, UnknownSymbol

EQUAL = "equal"
UNEQUAL = "unequal"
UNKNOWN = "unknown"

DEFAULT_BUDGET = 1000
DEFAULT_NODE_CAP = 100_000


@dataclass(frozen=True)
class Move:
    """One rewriting step: ``rule`` applied ``count`` times yields ``word``."""

    rule: str
    count: int
    word: GroupWord


@dataclass(frozen=True)
class Verdict:
    status: str
    moves: tuple[Move, ...] = ()
    reason: str = ""

    @property
    def equal(self) -> bool:
        return self.status == EQUAL


# ---------------------------------------------------------------------------
# homomorphic images (sound for inequality)
# ---------------------------------------------------------------------------

def _check_symbols(w: GroupWord) -> None:
    bad = w.symbols() - {"a", "t", "s"}
    if bad:
        raise UnknownSymbol(f"symbols {sorted(bad)} are not in {{a, t, s}}")


def abelian_image(w: GroupWord) -> tuple[int, int]:
    """(t-exponent sum, s-exponent sum): the map G -> Z^2."""
    return w.exponent_sum("t"), w.exponent_sum("s")


def affine_generators(spec: TwistedSpec) -> dict[str, tuple[Fraction, Fraction]]:
    """Images of a, t, s as affine maps ``x -> lam*x + b`` of Q, stored ``(lam, b)``.

    a -> x+1, t -> n x, s -> m x + r/(n-1).  The commutator of the last two
    is translation by r, so all three relators hold.
    """
    return {
        "a": (Fraction(1), Fraction(1)),
        "t": (Fraction(spec.n), Fraction(0)),
        "s": (Fraction(spec.m), Fraction(spec.r_twist, spec.n - 1)),
    }


def affine_compose(f, g):
    """f o g."""
    return f[0] * g[0], f[0] * g[1] + f[1]


def affine_power(f, k: int):
    lam, b = f
    if lam == 1:
        return lam, b * k
    lam_k = lam**k
    return lam_k, b * (lam_k - 1) / (lam - 1)


def affine_syllable(spec: TwistedSpec, symbol: str, exp: int):
    lam, b = affine_generators(spec)[symbol]
    if symbol == "a":
        return Fraction(1), b * exp
    return affine_power((lam, b), exp)


def affine_image(w: GroupWord, spec: TwistedSpec):
    out = (Fraction(1), Fraction(0))
    for s, e in w.letters:
        out = affine_compose(out, affine_syllable(spec, s, e))
    return out


# ---------------------------------------------------------------------------
# collection
# ---------------------------------------------------------------------------

def _tokens(w: GroupWord) -> list[tuple[str, int]]:
    out = []
    for s, e in w.letters:
        if s == "a":
            out.append(("a", e))
        else:
            out.extend([(s, 1 if e > 0 else -1)] * abs(e))
    return out


def _normalize(tokens: list[tuple[str, int]]) -> list[tuple[str, int]]:
    """Merge a-runs and freely reduce."""
    out: list[tuple[str, int]] = []
    for s, e in tokens:
        if out and s == "a" and out[-1][0] == "a":
            k = out[-1][1] + e
            out.pop()
            if k:
                out.append(("a", k))
        elif out and s != "a" and out[-1] == (s, -e):
            out.pop()
        elif e:
            out.append((s, e))
    return out


def _word(tokens) -> GroupWord:
    return GroupWord(tuple(tokens))


def _collect_step(tokens, spec: TwistedSpec):
    """Apply the first applicable rule; return ``(tokens, rule, count)`` or None."""
    n_of = {"t": spec.n, "s": spec.m}
    r = spec.r_twist
    for i in range(len(tokens) - 2):
        x, a, y = tokens[i:i + 3]
        if x[0] != "a" and x[1] == -1 and y == (x[0], 1) and a[0] == "a":
            n_x = n_of[x[0]]
            if a[1] % n_x == 0:
                k = a[1] // n_x
                rule = f"{x[0]}^-1 a^{a[1]} {x[0]} = a^{k}"
                return tokens[:i] + [("a", k)] + tokens[i + 3:], rule, abs(k)
    for i in range(len(tokens) - 1):
        x, y = tokens[i], tokens[i + 1]
        rep = None
        if x[0] != "a" and x[1] == 1 and y[0] == "a":
            k = y[1] * n_of[x[0]]
            rep = [("a", k), x], f"{x[0]} a^{y[1]} = a^{k} {x[0]}", abs(y[1])
        elif x[0] == "a" and y[0] != "a" and y[1] == -1:
            k = x[1] * n_of[y[0]]
            rep = [y, ("a", k)], f"a^{x[1]} {y[0]}^-1 = {y[0]}^-1 a^{k}", abs(x[1])
        elif (x, y) == (("t", 1), ("s", 1)):
            rep = [("a", r), ("s", 1), ("t", 1)], f"t s = a^{r} s t", 1
        elif (x, y) == (("t", 1), ("s", -1)):
            rep = [("s", -1), ("a", -r), ("t", 1)], f"t s^-1 = s^-1 a^{-r} t", 1
        elif (x, y) == (("s", 1), ("t", -1)):
            rep = [("t", -1), ("a", r), ("s", 1)], f"s t^-1 = t^-1 a^{r} s", 1
        elif (x, y) == (("s", -1), ("t", -1)):
            rep = [("t", -1), ("s", -1), ("a", -r)], f"s^-1 t^-1 = t^-1 s^-1 a^{-r}", 1
        if rep is not None:
            new, rule, count = rep
            return tokens[:i] + new + tokens[i + 2:], rule, count
    return None


def collect(w: GroupWord, spec: TwistedSpec, budget: int = DEFAULT_BUDGET):
    """Collect ``w`` towards ``t^-x s^-y a^M s^z t^u``.

    Returns ``(word, moves, complete)``; ``complete`` is False when the budget
    of relator applications ran out first.
    """
    tokens = _normalize(_tokens(w))
    moves = []
    used = 0
    while True:
        step = _collect_step(tokens, spec)
        if step is None:
            return _word(tokens), moves, True
        new, rule, count = step
        if used + count > budget:
            return _word(tokens), moves, False
        used += count
        tokens = _normalize(new)
        moves.append(Move(rule, count, _word(tokens)))


# ---------------------------------------------------------------------------
# bidirectional relator-move search
# ---------------------------------------------------------------------------

_CODE = {"a": 1, "t": 2, "s": 3}
_SYM = {v: k for k, v in _CODE.items()}


def _encode(w: GroupWord) -> tuple[int, ...]:
    return tuple(_CODE[s] * e for s, e in w.expanded())


def _decode(code) -> GroupWord:
    return GroupWord(tuple((_SYM[abs(c)], 1 if c > 0 else -1) for c in code))


def _free_reduce(code) -> tuple[int, ...]:
    out: list[int] = []
    for c in code:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def _inv(code) -> tuple[int, ...]:
    return tuple(-c for c in reversed(code))


def relators(spec: TwistedSpec) -> list[GroupWord]:
    return [
        GroupWord.parse(f"t a t^-1 a^{-spec.n}"),
        GroupWord.parse(f"s a s^-1 a^{-spec.m}"),
        GroupWord.parse(f"t s t^-1 s^-1 a^{-spec.r_twist}"),
    ]


def _substitutions(spec: TwistedSpec) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (x, y) with x y^-1 a cyclic conjugate of a relator or its inverse."""
    pairs = set()
    for rel in relators(spec):
        base = _free_reduce(_encode(rel))
        for word in (base, _inv(base)):
            for k in range(len(word)):
                rot = word[k:] + word[:k]
                for cut in range(len(rot) + 1):
                    pairs.add((rot[:cut], _inv(rot[cut:])))
    return sorted(pairs)


def _neighbours(code, subs):
    seen = set()
    for x, y in subs:
        lx = len(x)
        for i in range(len(code) - lx + 1):
            if code[i:i + lx] == x:
                new = _free_reduce(code[:i] + y + code[i + lx:])
                if new not in seen:
                    seen.add(new)
                    yield new, (x, y)


def relator_search(w: GroupWord, spec: TwistedSpec, budget: int,
                   node_cap: int = DEFAULT_NODE_CAP):
    """Shortest relator-move path from ``w`` to the empty word, or None."""
    start = _free_reduce(_encode(w))
    if not start:
        return []
    subs = _substitutions(spec)
    parents = [{start: None}, {(): None}]
    frontiers = [[start], [()]]
    depths = [0, 0]
    nodes = 2
    while frontiers[0] and frontiers[1] and depths[0] + depths[1] < budget:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        nxt = []
        for code in frontiers[side]:
            for new, pair in _neighbours(code, subs):
                if new in parents[side]:
                    continue
                parents[side][new] = (code, pair)
                nodes += 1
                if new in parents[1 - side]:
                    return _join(new, parents)
                nxt.append(new)
                if nodes >= node_cap:
                    return None
        frontiers[side] = nxt
        depths[side] += 1
    return None


def _join(meet, parents):
    forward = []
    node = meet
    while parents[0][node] is not None:
        prev, (x, y) = parents[0][node]
        forward.append(Move(_rule_text(x, y), 1, _decode(node)))
        node = prev
    forward.reverse()
    node = meet
    while parents[1][node] is not None:
        prev, (x, y) = parents[1][node]
        # the backward tree went prev -> node by x -> y; undo it with y -> x
        forward.append(Move(_rule_text(y, x), 1, _decode(prev)))
        node = prev
    return forward


def _rule_text(x, y) -> str:
    return f"{_decode(x)} -> {_decode(y)}"


# ---------------------------------------------------------------------------
# public entry point
# ---------------------------------------------------------------------------

def twisted_equal(w1: GroupWord, w2: GroupWord, spec: TwistedSpec,
                  budget: int = DEFAULT_BUDGET,
                  node_cap: int = DEFAULT_NODE_CAP) -> Verdict:
    """Semi-decide ``w1 == w2`` in G(n, m, r).

    ``equal`` carries the move sequence taking ``w1 w2^-1`` to the empty word,
    of total length at most ``budget`` relator applications.
    """
    _check_symbols(w1)
    _check_symbols(w2)
    if abelian_image(w1) != abelian_image(w2):
        return Verdict(UNEQUAL, reason="abelianization images differ")
    if affine_image(w1, spec) != affine_image(w2, spec):
        return Verdict(UNEQUAL, reason="affine images differ")
    w = w1 * w2.inverse()
    word, moves, complete = collect(w, spec, budget)
    if complete and not word.letters:
        return Verdict(EQUAL, tuple(moves), "collection")
    found = relator_search(w, spec, budget, node_cap)
    if found is not None:
        return Verdict(EQUAL, tuple(found), "relator search")
    return Verdict(UNKNOWN, reason="no move sequence within budget")
