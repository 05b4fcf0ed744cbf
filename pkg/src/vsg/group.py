"""Wirtinger-style presentations of the fundamental group and their invariants."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from vsg.code import OVER, TAIL, UNDER, VsgCode, require_valid

Word = tuple[int, ...]  # generator i is i+1, its inverse -(i+1)


class BudgetError(RuntimeError):
    pass


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if any(not 1 <= abs(x) <= n for x in r):
                raise ValueError(f"relator {r} references an unknown generator")
        object.__setattr__(self, "relators", tuple(free_reduce(r) for r in self.relators))

    def to_text(self) -> str:
        def sym(x):
            name = self.generators[abs(x) - 1]
            return name if x > 0 else name.upper()

        rels = ", ".join(" ".join(sym(x) for x in r) if r else "1" for r in self.relators)
        return f"gens: {','.join(self.generators)}\nrels:{' ' + rels if rels else ''}\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupPresentation":
        gens: list[str] = []
        rels: list[Word] = []
        for line in text.splitlines():
            line = line.strip()
            if line.startswith("gens:"):
                body = line[5:].strip()
                gens = [g.strip() for g in body.split(",") if g.strip()]
            elif line.startswith("rels:"):
                index = {g: i + 1 for i, g in enumerate(gens)}
                for chunk in line[5:].split(","):
                    chunk = chunk.strip()
                    if not chunk:
                        continue
                    if chunk == "1":
                        rels.append(())
                        continue
                    word = []
                    for tok in chunk.split():
                        if tok in index:
                            word.append(index[tok])
                        elif tok.lower() in index and tok != tok.lower():
                            word.append(-index[tok.lower()])
                        else:
                            raise ValueError(f"unknown generator {tok!r}")
                    rels.append(tuple(word))
        for g in gens:
            if g != g.lower():
                raise ValueError("generator names must be lower case")
        return cls(tuple(gens), tuple(rels))


# -- Wirtinger construction ------------------------------------------------------------


def _vertex_word(code: VsgCode, vertex: str, first_arc, last_arc) -> Word:
    # Clockwise product (reverse rotation) of meridians; outgoing legs +1, incoming -1.
    word = []
    for e, end in reversed(code.rotations[vertex]):
        if end == TAIL:
            word.append(first_arc[e] + 1)
        else:
            word.append(-(last_arc[e] + 1))
    return tuple(word)


def wirtinger(code: VsgCode) -> GroupPresentation:
    """One generator per arc (broken at under-passages and vertices)."""
    require_valid(code)
    n = 0
    first_arc: dict[str, int] = {}
    last_arc: dict[str, int] = {}
    over_arc: dict[str, int] = {}
    under_in: dict[str, int] = {}
    under_out: dict[str, int] = {}
    sign: dict[str, int] = {}
    for e in code.edges:
        cur = n
        n += 1
        first_arc[e.id] = cur
        for p in code.passages[e.id]:
            sign[p.crossing] = p.sign
            if p.role == OVER:
                over_arc[p.crossing] = cur
            else:
                under_in[p.crossing] = cur
                cur = n
                n += 1
                under_out[p.crossing] = cur
        last_arc[e.id] = cur
    rels: list[Word] = []
    for c in code.labels():
        b, a, o, s = over_arc[c] + 1, under_in[c] + 1, under_out[c] + 1, sign[c]
        # out = over^s * in * over^-s
        rels.append((-o, s * b, a, -s * b))
    for v in code.vertices:
        if code.rotations[v]:
            rels.append(_vertex_word(code, v, first_arc, last_arc))
    return GroupPresentation(tuple(f"x{i}" for i in range(1, n + 1)), tuple(rels))


# -- simplification ------------------------------------------------------------------


def _substitute(word: Word, gen: int, repl: Word) -> Word:
    out: list[int] = []
    for x in word:
        if x == gen:
            out.extend(repl)
        elif x == -gen:
            out.extend(invert(repl))
        else:
            out.append(x)
    return free_reduce(out)


def _canon_relator(r: Word) -> Word:
    """Representative of r up to cyclic permutation and inversion."""
    if not r:
        return r
    cands = []
    for w in (r, invert(r)):
        for i in range(len(w)):
            cands.append(w[i:] + w[:i])
    return min(cands, key=lambda w: (len(w), w))


def tietze_simplify(p: GroupPresentation) -> GroupPresentation:
    """Eliminate generators that occur once in some relator; drop trivial relators."""
    gens = list(p.generators)
    ids = list(range(1, len(gens) + 1))
    rels = [cyclic_reduce(r) for r in p.relators]
    while True:
        rels = [r for r in rels if r]
        seen = set()
        uniq = []
        for r in rels:
            key = _canon_relator(r)
            if key not in seen:
                seen.add(key)
                uniq.append(r)
        rels = uniq
        best = None
        for ri, r in enumerate(rels):
            for g in ids:
                hits = [i for i, x in enumerate(r) if abs(x) == g]
                if len(hits) != 1:
                    continue
                i = hits[0]
                rot = r[i:] + r[:i]  # x^eps * w = 1
                eps, w = rot[0] // g, rot[1:]
                repl = invert(w) if eps == 1 else tuple(w)
                cand = (len(repl), ri, g, repl)
                if best is None or cand[:3] < best[:3]:
                    best = cand
        if best is None:
            break
        _, ri, g, repl = best
        rels = [cyclic_reduce(_substitute(r, g, repl)) for k, r in enumerate(rels) if k != ri]
        ids.remove(g)
    remap = {g: i + 1 for i, g in enumerate(ids)}
    new_rels = tuple(tuple((1 if x > 0 else -1) * remap[abs(x)] for x in r) for r in rels)
    return GroupPresentation(tuple(gens[g - 1] for g in ids), new_rels)


# -- abelianization ------------------------------------------------------------------


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form of an integer matrix."""
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # Move the smallest nonzero entry of row/column t to the pivot.
                best = (abs(a[t][t]), t, t)
                for i in range(t + 1, rows):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, cols):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            # Enforce divisibility of the remaining block.
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class Abelianization:
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def abelianization(p: GroupPresentation) -> Abelianization:
    n = len(p.generators)
    matrix = []
    for r in p.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        matrix.append(row)
    diag = smith_diagonal(matrix) if matrix and n else []
    rank = sum(1 for d in diag if d)
    return Abelianization(n - rank, tuple(d for d in diag if d > 1))


# -- finite groups and homomorphism counts -------------------------------------------


@dataclass(frozen=True)
class FiniteGroupTable:
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int

    def __post_init__(self):
        n = len(self.elements)
        t = self.table
        if len(t) != n or any(len(row) != n for row in t):
            raise ValueError("Cayley table must be square")
        e = self.identity
        if any(t[e][a] != a or t[a][e] != a for a in range(n)):
            raise ValueError("identity axiom fails")
        for a in range(n):
            if not any(t[a][b] == e for b in range(n)):
                raise ValueError(f"element {self.elements[a]} has no inverse")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError("associativity fails")

    @property
    def order(self) -> int:
        return len(self.elements)

    def inverse(self, a: int) -> int:
        return next(b for b in range(self.order) if self.table[a][b] == self.identity)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "table": [list(r) for r in self.table],
                "identity": self.identity}

    @classmethod
    def from_json(cls, doc: dict) -> "FiniteGroupTable":
        return cls(tuple(str(x) for x in doc["elements"]),
                   tuple(tuple(int(x) for x in row) for row in doc["table"]),
                   int(doc.get("identity", 0)))

    @classmethod
    def load(cls, path) -> "FiniteGroupTable":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def symmetric_group(n: int) -> FiniteGroupTable:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    names = tuple("".join(str(x + 1) for x in p) for p in perms)
    return FiniteGroupTable(names, table, index[tuple(range(n))])


def cyclic_group(n: int) -> FiniteGroupTable:
    return FiniteGroupTable(tuple(str(i) for i in range(n)),
                            tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0)


def trivial_group() -> FiniteGroupTable:
    return cyclic_group(1)


def count_homs(p: GroupPresentation, g: FiniteGroupTable, max_assignments: int = 10**8) -> int:
    """Number of homomorphisms from the presented group into ``g``."""
    n = len(p.generators)
    if g.order ** n > max_assignments and n > 0:
        # Backtracking prunes, but refuse obviously hopeless inputs.
        if n > 12:
            raise BudgetError(f"{n} generators into a group of order {g.order}")
    inv = [g.inverse(a) for a in range(g.order)]
    t = g.table
    rels = [cyclic_reduce(r) for r in p.relators]
    rels = [r for r in rels if r]
    ready: dict[int, list[Word]] = {i: [] for i in range(n)}
    for r in rels:
        ready[max(abs(x) for x in r) - 1].append(r)
    image = [0] * n

    def holds(r: Word) -> bool:
        acc = g.identity
        for x in r:
            a = image[abs(x) - 1]
            acc = t[acc][a if x > 0 else inv[a]]
        return acc == g.identity

    def rec(i: int) -> int:
        if i == n:
            return 1
        total = 0
        for a in range(g.order):
            image[i] = a
            if all(holds(r) for r in ready[i]):
                total += rec(i + 1)
        return total

    return rec(0)
