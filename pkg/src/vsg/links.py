"""T(G): links obtained by local vertex replacements, with their invariants."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from vsg.code import HEAD, OVER, TAIL, UNDER, Passage, VsgCode, require_valid
from vsg.laurent import DELTA, ONE, ZERO, LaurentPoly
from vsg.yamada import OI, OO, UI, UO, BudgetError, smoothing_pairs

DEFAULT_MAX_CHOICES = 200_000
DEFAULT_MAX_CROSSINGS = 16
_MAX_CANON_TRIALS = 200_000


class Replacement(NamedTuple):
    vertex: str
    pair: tuple[tuple[str, str], tuple[str, str]]  # two half-edges joined at the vertex


def vertex_replacements(code: VsgCode, vertex: str) -> list[Replacement]:
    rot = code.rotations[vertex]
    return [Replacement(vertex, (rot[i], rot[j]))
            for i, j in itertools.combinations(range(len(rot)), 2)]


def enumerate_replacements(code: VsgCode) -> list[tuple[Replacement, ...]]:
    require_valid(code)
    return list(itertools.product(*(vertex_replacements(code, v) for v in code.vertices)))


def count_replacements(code: VsgCode) -> int:
    total = 1
    for v in code.vertices:
        d = code.degree(v)
        total *= d * (d - 1) // 2
    return total


@dataclass(frozen=True)
class VirtualLink:
    """Closed components as cyclic passage sequences.

    Signs are those of the link with its components oriented as stored.
    """

    components: tuple[tuple[Passage, ...], ...]

    def __post_init__(self):
        seen: dict[str, list[Passage]] = {}
        for comp in self.components:
            for p in comp:
                seen.setdefault(p.crossing, []).append(p)
        for label, ps in seen.items():
            if len(ps) != 2 or {p.role for p in ps} != {OVER, UNDER} or ps[0].sign != ps[1].sign:
                raise ValueError(f"crossing {label} is not a valid pair in the link")

    @property
    def size(self) -> int:
        return len(self.components)

    def labels(self) -> list[str]:
        out: list[str] = []
        for comp in self.components:
            for p in comp:
                if p.crossing not in out:
                    out.append(p.crossing)
        return out

    def writhe(self) -> int:
        return sum(p.sign for comp in self.components for p in comp if p.role == OVER)

    def to_json(self) -> dict:
        return {"components": [{"anchor": 0,
                                "passages": [f"{p.crossing}:{p.role}{'+' if p.sign > 0 else '-'}"
                                             for p in comp]}
                               for comp in self.components]}

    def to_text(self) -> str:
        if not self.components:
            return "empty"
        return " | ".join(" ".join(f"{p.crossing}:{p.role}{'+' if p.sign > 0 else '-'}"
                                   for p in comp) or "()" for comp in self.components)


EMPTY_LINK = VirtualLink(())


def unknot_link() -> VirtualLink:
    return VirtualLink(((),))


def _trace(code: VsgCode, choice) -> tuple[list[list[tuple[str, int]]], list[list[tuple[str, int]]]]:
    """Strands after replacement: (closed cycles, open strands) of (edge, direction)."""
    partner = {}
    for rep in choice:
        a, b = rep.pair
        partner[a] = b
        partner[b] = a
    order = {e.id: i for i, e in enumerate(code.edges)}
    used: set[str] = set()
    closed, open_ = [], []

    def walk(edge: str, direction: int):
        """Follow from the far end of (edge, direction); returns (steps, closed?)."""
        steps = []
        cur = (edge, direction)
        while True:
            far = (cur[0], HEAD if cur[1] > 0 else TAIL)
            nxt = partner.get(far)
            if nxt is None:
                return steps, False
            e2, end = nxt
            step = (e2, 1 if end == TAIL else -1)
            if e2 == edge:
                return steps, True
            steps.append(step)
            cur = step

    for e in code.edges:
        if e.id in used:
            continue
        fwd, is_closed = walk(e.id, 1)
        if is_closed:
            cycle = [(e.id, 1)] + fwd
        else:
            back, _ = walk(e.id, -1)
            strand = [(x, -d) for x, d in reversed(back)] + [(e.id, 1)] + fwd
            used.update(x for x, _ in strand)
            open_.append(strand)
            continue
        used.update(x for x, _ in cycle)
        # Orient along the lowest edge, starting there.
        k = min(range(len(cycle)), key=lambda i: order[cycle[i][0]])
        if cycle[k][1] < 0:
            cycle = [(x, -d) for x, d in reversed(cycle)]
            k = min(range(len(cycle)), key=lambda i: order[cycle[i][0]])
        closed.append(cycle[k:] + cycle[:k])
    return closed, open_


def link_of(code: VsgCode, choice) -> VirtualLink:
    require_valid(code)
    closed, open_ = _trace(code, choice)
    doomed = {p.crossing for strand in open_ for e, _ in strand for p in code.passages[e]}
    direction = {}
    for cycle in closed:
        for e, d in cycle:
            direction[e] = d
    # Reorienting a strand flips each crossing it takes part in.
    flip: dict[str, int] = {}
    for e, d in direction.items():
        for p in code.passages[e]:
            flip[p.crossing] = flip.get(p.crossing, 1) * d
    comps = []
    for cycle in closed:
        seq = []
        for e, d in cycle:
            ps = code.passages[e] if d > 0 else tuple(reversed(code.passages[e]))
            seq.extend(Passage(p.crossing, p.role, p.sign * flip[p.crossing])
                       for p in ps if p.crossing not in doomed)
        comps.append(tuple(seq))
    return VirtualLink(tuple(comps))


def canonical_link(link: VirtualLink) -> VirtualLink:
    """Relabelled representative minimal over component order and rotations."""
    comps = link.components
    if not comps:
        return link
    trials = 1
    for c in comps:
        trials *= max(len(c), 1)
    trials *= math.factorial(len(comps))
    best = None

    def encode(seq_of_comps):
        names: dict[str, str] = {}
        out = []
        for comp in seq_of_comps:
            row = []
            for p in comp:
                if p.crossing not in names:
                    names[p.crossing] = f"c{len(names) + 1}"
                row.append((int(names[p.crossing][1:]), p.role, p.sign))
            out.append(tuple(row))
        return tuple(out)

    if trials <= _MAX_CANON_TRIALS:
        candidates = (
            [c[r:] + c[:r] for c, r in zip(perm, rots)]
            for perm in itertools.permutations(comps)
            for rots in itertools.product(*(range(max(len(c), 1)) for c in perm))
        )
    else:
        # Too many to try exhaustively; fall back to a label-free ordering.
        def shape(c):
            return min(tuple((p.role, p.sign) for p in c[r:] + c[:r]) for r in range(max(len(c), 1)))
        ordered = sorted(comps, key=lambda c: (len(c), shape(c)))
        candidates = iter([list(ordered)])
    for cand in candidates:
        enc = encode(cand)
        if best is None or enc < best:
            best = enc
    return VirtualLink(tuple(tuple(Passage(f"c{n}", role, sign) for n, role, sign in comp)
                             for comp in best))


def tg(code: VsgCode, include_empty: bool = True, max_choices: int = DEFAULT_MAX_CHOICES,
       as_set: bool = False) -> Counter:
    """Multiset of canonical links over all replacement choices."""
    n = count_replacements(code)
    if n > max_choices:
        raise BudgetError(f"{n} replacement choices exceed the budget of {max_choices}")
    out: Counter = Counter()
    for choice in enumerate_replacements(code):
        link = canonical_link(link_of(code, choice))
        if not include_empty and link.size == 0:
            continue
        out[link] += 1
    if as_set:
        return Counter({k: 1 for k in out})
    return out


# -- invariants ----------------------------------------------------------------------


def linking_number(link: VirtualLink, i: int, j: int) -> Fraction:
    if i == j or not (0 <= i < link.size and 0 <= j < link.size):
        raise IndexError(f"components {i}, {j} invalid for a {link.size}-component link")
    where: dict[str, set[int]] = {}
    sign = {}
    for k, comp in enumerate(link.components):
        for p in comp:
            where.setdefault(p.crossing, set()).add(k)
            sign[p.crossing] = p.sign
    total = sum(sign[c] for c, ks in where.items() if ks == {i, j})
    return Fraction(total, 2)


def linking_numbers(link: VirtualLink) -> tuple[Fraction, ...]:
    return tuple(sorted(linking_number(link, i, j)
                        for i, j in itertools.combinations(range(link.size), 2)))


def bracket(link: VirtualLink, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPoly:
    """Kauffman bracket state sum; the empty link has bracket 1."""
    if not link.components:
        return ONE
    labels = link.labels()
    if len(labels) > max_crossings:
        raise BudgetError(f"{len(labels)} crossings exceed the bracket budget of {max_crossings}")
    sign = {p.crossing: p.sign for comp in link.components for p in comp}
    free_loops = 0
    segs = []
    for comp in link.components:
        if not comp:
            free_loops += 1
            continue
        for a, b in zip(comp, comp[1:] + comp[:1]):
            out_end = OO if a.role == OVER else UO
            in_end = OI if b.role == OVER else UI
            segs.append(((a.crossing, out_end), (b.crossing, in_end)))
    ends = [(c, e) for c in labels for e in (OI, OO, UI, UO)]
    idx = {x: k for k, x in enumerate(ends)}
    by_weight: dict[int, dict[int, int]] = {}
    for kinds in itertools.product("AB", repeat=len(labels)):
        parent = list(range(len(ends)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(idx[a]), find(idx[b])
            if ra != rb:
                parent[ra] = rb

        for a, b in segs:
            union(a, b)
        for c, k in zip(labels, kinds):
            for x, y in smoothing_pairs(sign[c], k):
                union((c, x), (c, y))
        loops = len({find(i) for i in range(len(ends))}) + free_loops
        w = kinds.count("A") - kinds.count("B")
        row = by_weight.setdefault(w, {})
        row[loops] = row.get(loops, 0) + 1
    total = ZERO
    for w, row in by_weight.items():
        for loops, mult in row.items():
            total = total + (DELTA ** (loops - 1)).shift(w) * mult
    return total


def f_poly(link: VirtualLink, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPoly:
    w = link.writhe()
    factor = LaurentPoly.monomial(-3 * w, (-1) ** (w % 2))  # (-A^3)^(-w)
    return factor * bracket(link, max_crossings)


def knot_link(code: VsgCode) -> VirtualLink:
    """The link whose single component runs through every edge of a one-loop code."""
    if len(code.edges) != 1 or code.edges[0].tail != code.edges[0].head:
        raise ValueError("expected a single loop edge")
    return VirtualLink((tuple(code.passages[code.edges[0].id]),))


def invariant_tuple(link: VirtualLink) -> tuple:
    return (link.size, linking_numbers(link), f_poly(link).to_text())


def tg_invariants(code: VsgCode, include_empty: bool = True) -> Counter:
    out: Counter = Counter()
    for link, mult in tg(code, include_empty).items():
        out[invariant_tuple(link)] += mult
    return out


def tg_linking(code: VsgCode) -> Counter:
    out: Counter = Counter()
    for link, mult in tg(code).items():
        out[(link.size, linking_numbers(link))] += mult
    return out


def iter_links(code: VsgCode) -> Iterator[tuple[int, tuple[Replacement, ...], VirtualLink]]:
    for k, choice in enumerate(enumerate_replacements(code)):
        yield k, choice, link_of(code, choice)
