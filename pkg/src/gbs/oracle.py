"""Todd-Coxeter coset enumeration (HLT or Felsch) for Gamma(S).

Used as a brute-force check on the index and membership formulas; it knows
nothing about normal forms, only the finite presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import GammaSpec, GroupWord

DEFAULT_MAX_COSETS = 100_000
# dead rows are kept, so bound the total table size as well
_TOTAL_FACTOR = 20


class CosetOverflow(RuntimeError):
    """The coset cap was reached (infinite index or cap too small)."""


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...]

    def __str__(self) -> str:
        rels = ", ".join(str(r) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def gamma_presentation(spec: GammaSpec) -> FinitePresentation:
    """<a, t_1..t_r | [t_i, t_j] (i<j), t_i a t_i^-1 a^-n_i>."""
    ts = [f"t{i + 1}" for i in range(spec.r)]
    rels = []
    for i in range(spec.r):
        for j in range(i + 1, spec.r):
            rels.append(GroupWord(((ts[i], 1), (ts[j], 1), (ts[i], -1), (ts[j], -1))))
    for t, n_i in zip(ts, spec.moduli):
        rels.append(GroupWord(((t, 1), ("a", 1), (t, -1), ("a", -n_i))))
    return FinitePresentation(tuple(["a"] + ts), tuple(rels))


@dataclass
class CosetTable:
    """Closed coset table; coset 0 is the subgroup itself."""

    generators: tuple[str, ...]
    rows: list[list[int]]

    @property
    def index(self) -> int:
        return len(self.rows)

    def _column(self, symbol: str, exp: int) -> int:
        if symbol == "t" and "t" not in self.generators and "t1" in self.generators:
            symbol = "t1"
        return 2 * self.generators.index(symbol) + (0 if exp > 0 else 1)

    def trace(self, w: GroupWord, start: int = 0) -> int:
        c = start
        for s, e in w.letters:
            col = self._column(s, e)
            for _ in range(abs(e)):
                c = self.rows[c][col]
        return c

    def contains(self, w: GroupWord) -> bool:
        return self.trace(w) == 0


class _Enumeration:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.inv = [x ^ 1 for x in range(self.ncols)]
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.max_cosets = max_cosets
        self.live = 1
        self.relators: list[list[int]] = []
        # cyclic conjugates of relators and inverses, keyed by first letter
        self.by_first: dict[int, list[list[int]]] = {}
        self.deductions: list[tuple[int, int]] = []

    def set_relators(self, rels: list[list[int]]) -> None:
        self.relators = rels
        conj: set[tuple[int, ...]] = set()
        for rel in rels:
            for w in (rel, [self.inv[x] for x in reversed(rel)]):
                for k in range(len(w)):
                    conj.add(tuple(w[k:] + w[:k]))
        for w in sorted(conj):
            self.by_first.setdefault(w[0], []).append(list(w))

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if self.live >= self.max_cosets:
            self.lookahead()
            if self.live >= self.max_cosets or not self.alive(c):
                raise CosetOverflow(f"more than {self.max_cosets} live cosets")
        if len(self.table) >= _TOTAL_FACTOR * self.max_cosets:
            raise CosetOverflow(f"more than {_TOTAL_FACTOR * self.max_cosets} cosets defined")
        self.live += 1
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(new)
        self.table[c][x] = new
        self.table[new][self.inv[x]] = c
        self.deductions.append((c, x))

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        table, inv = self.table, self.inv
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = table[g][x]
                if d < 0:
                    continue
                table[d][inv[x]] = -1
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] >= 0:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][inv[x]] >= 0:
                    self._merge(mu, table[nu][inv[x]], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv[x]] = mu
                    self.deductions.append((mu, x))

    def lookahead(self) -> None:
        """Scan every live coset under every relator without defining new ones."""
        for c in range(len(self.table)):
            for rel in self.relators:
                if not self.alive(c):
                    break
                self.scan_and_fill(c, rel, fill=False)

    def scan_and_fill(self, c: int, word: Sequence[int], fill: bool = True) -> None:
        table, inv = self.table, self.inv
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] >= 0:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][inv[word[j]]] >= 0:
                b = table[b][inv[word[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][inv[word[i]]] = f
                self.deductions.append((f, word[i]))
                return
            if not fill:
                return
            self.define(f, word[i])

    def process_deductions(self) -> None:
        while self.deductions:
            c, x = self.deductions.pop()
            if not self.alive(c):
                continue
            for w in self.by_first.get(x, ()):
                if not self.alive(c):
                    break
                self.scan_and_fill(c, w, fill=False)
            d = self.table[c][x]
            if d < 0 or not self.alive(d):
                continue
            for w in self.by_first.get(self.inv[x], ()):
                if not self.alive(d):
                    break
                self.scan_and_fill(d, w, fill=False)


def _encode(w: GroupWord, gens: Sequence[str]) -> list[int]:
    out = []
    for s, e in w.letters:
        if s == "t" and "t" not in gens and "t1" in gens:
            s = "t1"
        if s not in gens:
            raise ValueError(f"unknown generator {s!r}")
        col = 2 * gens.index(s) + (0 if e > 0 else 1)
        out.extend([col] * abs(e))
    return out


def todd_coxeter(pres: FinitePresentation, subgens: Sequence[GroupWord],
                 max_cosets: int = DEFAULT_MAX_COSETS,
                 strategy: str = "hlt") -> CosetTable:
    """Enumerate the cosets of <subgens>; raises :class:`CosetOverflow` at the cap.

    ``strategy`` is ``"felsch"`` (define one coset at a time and chase every
    deduction; economical in cosets) or ``"hlt"`` (scan whole relators and fill).
    Either way a final HLT sweep checks every relator at every coset.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    if strategy not in ("felsch", "hlt"):
        raise ValueError(f"unknown strategy {strategy!r}")
    gens = list(pres.generators)
    rels = [_encode(r, gens) for r in pres.relators]
    subs = [_encode(w, gens) for w in subgens]
    en = _Enumeration(len(gens), max_cosets)
    en.set_relators(rels)
    for w in subs:
        en.scan_and_fill(0, w)
    if strategy == "felsch":
        en.process_deductions()
        c = 0
        while c < len(en.table):
            for x in range(en.ncols):
                if not en.alive(c):
                    break
                if en.table[c][x] < 0:
                    en.define(c, x)
                    en.process_deductions()
            c += 1
    c = 0
    while c < len(en.table):
        if en.alive(c):
            for rel in rels:
                en.scan_and_fill(c, rel)
                if not en.alive(c):
                    break
            if en.alive(c):
                for x in range(en.ncols):
                    if en.table[c][x] < 0:
                        en.define(c, x)
        c += 1
    live = [c for c in range(len(en.table)) if en.alive(c)]
    renum = {c: i for i, c in enumerate(live)}
    rows = [[renum[en.rep(en.table[c][x])] for x in range(en.ncols)] for c in live]
    return CosetTable(tuple(gens), rows)
