"""Finite virtual quandle structures and coloring counts of realized diagrams."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import reduce
from importlib import resources
from math import gcd

from vsg.code import VsgCode, ValidationReport, Violation, require_valid
from vsg.realize import PlanarDiagram, Port, realize


class StructureError(ValueError):
    """The structure fails its axioms for the requested parameter."""


class BudgetError(RuntimeError):
    pass


DEFAULT_MAX_ARCS = 400


@dataclass(frozen=True)
class FiniteVQS:
    elements: tuple[str, ...]
    op: tuple[tuple[int, ...], ...]  # op[a][b] = a ∘ b
    bar: tuple[int, ...]
    f: tuple[int, ...]
    d: int

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise ValueError("a structure needs at least one element")
        if len(self.op) != n or any(len(r) != n for r in self.op):
            raise ValueError("operation table must be square")
        for name, tab in (("bar", self.bar), ("f", self.f)):
            if len(tab) != n:
                raise ValueError(f"{name} table has the wrong length")
        if any(not 0 <= x < n for row in self.op for x in row) or any(
                not 0 <= x < n for x in self.bar + self.f):
            raise ValueError("table entry out of range")
        if sorted(self.f) != list(range(n)):
            raise ValueError("f must be a bijection")
        if self.d < 1:
            raise ValueError("d must be a positive integer")

    @property
    def size(self) -> int:
        return len(self.elements)

    def f_inv(self) -> tuple[int, ...]:
        inv = [0] * self.size
        for a, b in enumerate(self.f):
            inv[b] = a
        return tuple(inv)

    def f_power(self, k: int) -> tuple[int, ...]:
        base = self.f if k >= 0 else self.f_inv()
        out = tuple(range(self.size))
        for _ in range(abs(k)):
            out = tuple(base[x] for x in out)
        return out

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "op": [list(r) for r in self.op],
                "bar": list(self.bar), "f": list(self.f), "d": self.d}

    @classmethod
    def from_json(cls, doc: dict) -> "FiniteVQS":
        try:
            return cls(tuple(str(x) for x in doc["elements"]),
                       tuple(tuple(int(x) for x in r) for r in doc["op"]),
                       tuple(int(x) for x in doc["bar"]), tuple(int(x) for x in doc["f"]),
                       int(doc["d"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed structure JSON: {exc}") from exc

    @classmethod
    def load(cls, path) -> "FiniteVQS":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def shipped_structures() -> dict[str, FiniteVQS]:
    """Structures bundled with the package, keyed by file stem."""
    out = {}
    for entry in sorted(resources.files("vsg.data").iterdir(), key=lambda p: p.name):
        if entry.name.startswith("vqs_") and entry.name.endswith(".json"):
            out[entry.name[4:-5]] = FiniteVQS.from_json(json.loads(entry.read_text()))
    return out


def trivial_structure() -> FiniteVQS:
    return FiniteVQS(("0",), ((0,),), (0,), (0,), 1)


def dihedral_structure(n: int = 3, d: int = 2) -> FiniteVQS:
    return FiniteVQS(tuple(str(i) for i in range(n)),
                     tuple(tuple((2 * b - a) % n for b in range(n)) for a in range(n)),
                     tuple(range(n)), tuple(range(n)), d)


def gcd_valence(code: VsgCode) -> int:
    if not code.vertices:
        raise ValueError("gcd of valences needs at least one vertex")
    return reduce(gcd, (code.degree(v) for v in code.vertices))


def validate_vqs(s: FiniteVQS, d: int | None = None) -> ValidationReport:
    """Check every axiom over all tuples; the first failure per axiom is reported."""
    d = s.d if d is None else d
    n, op, bar, f = s.size, s.op, s.bar, s.f
    finv = s.f_inv()
    fd = s.f_power(d)
    E = s.elements
    bad: list[Violation] = []

    def first(rule, cases):
        for case in cases:
            if not case[0]:
                bad.append(Violation(rule, case[1]))
                return

    def chain(b, a, k):
        for _ in range(k):
            b = op[b][a]
        return b

    first("idempotence", ((op[a][a] == a, f"a={E[a]}") for a in range(n)))
    first("right-invertibility", (
        (op[op[a][b]][bar[b]] == a and op[op[a][bar[b]]][b] == a, f"a={E[a]} b={E[b]}")
        for a, b in itertools.product(range(n), repeat=2)))
    first("self-distributivity", (
        (op[op[a][b]][c] == op[op[a][c]][op[b][c]], f"a={E[a]} b={E[b]} c={E[c]}")
        for a, b, c in itertools.product(range(n), repeat=3)))
    first("d-periodicity", (
        (chain(b, a, d) == b and chain(b, bar[a], d) == b, f"a={E[a]} b={E[b]}")
        for a, b in itertools.product(range(n), repeat=2)))
    first("bar-compatibility", (
        (bar[op[a][b]] == op[bar[a]][b], f"a={E[a]} b={E[b]}")
        for a, b in itertools.product(range(n), repeat=2)))
    first("bar-absorption", ((op[bar[a]][a] == bar[a], f"a={E[a]}") for a in range(n)))
    first("bar-involution", ((bar[bar[a]] == a, f"a={E[a]}") for a in range(n)))
    first("f-order", ((fd[b] == b, f"b={E[b]} d={d}") for b in range(n)))
    first("f-bar", ((bar[f[a]] == f[bar[a]] and bar[finv[a]] == finv[bar[a]], f"a={E[a]}")
                    for a in range(n)))
    first("f-automorphism", (
        (f[op[a][b]] == op[f[a]][f[b]], f"a={E[a]} b={E[b]}")
        for a, b in itertools.product(range(n), repeat=2)))
    return ValidationReport(tuple(bad))


# -- coloring constraints ------------------------------------------------------------


@dataclass(frozen=True)
class ColoringSystem:
    """Arc variables of a diagram and the relations tying them together.

    ``crossings`` holds (in_under, over, out_under, sign); the over strand is
    already merged into one variable. ``virtuals`` holds (in, out, power) with
    out = f^power(in). ``vertices`` holds (entering, leaving) variable lists.
    """

    n_vars: int
    crossings: tuple[tuple[int, int, int, int], ...]
    virtuals: tuple[tuple[int, int, int], ...]
    vertices: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def coloring_system(diagram: PlanarDiagram) -> ColoringSystem:
    arcs = diagram.arcs
    parent = list(range(len(arcs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    into = {a.end: i for i, a in enumerate(arcs)}
    out_of = {a.start: i for i, a in enumerate(arcs)}
    for g in diagram.gadgets:
        if g.kind == "classical":
            i_slot, o_slot = g.over_slots()
            a, b = find(into[Port(g.id, i_slot)]), find(out_of[Port(g.id, o_slot)])
            parent[a] = b
    roots = sorted({find(i) for i in range(len(arcs))})
    index = {r: k for k, r in enumerate(roots)}

    def var(i):
        return index[find(i)]

    crossings, virtuals, vertices = [], [], []
    for g in diagram.gadgets:
        if g.kind == "classical":
            over = var(into[Port(g.id, g.ends.index("oi"))])
            crossings.append((var(into[Port(g.id, g.ends.index("ui"))]), over,
                              var(out_of[Port(g.id, g.ends.index("uo"))]), g.sign))
        elif g.kind == "virtual":
            positive = g.ends[1] == "b_in"  # a crosses b from right to left
            for strand, power in (("a", 1 if positive else -1), ("b", -1 if positive else 1)):
                virtuals.append((var(into[Port(g.id, g.ends.index(strand + "_in"))]),
                                 var(out_of[Port(g.id, g.ends.index(strand + "_out"))]), power))
        else:
            ins = tuple(var(into[Port(g.id, s)]) for s in range(len(g.rotation))
                        if Port(g.id, s) in into)
            outs = tuple(var(out_of[Port(g.id, s)]) for s in range(len(g.rotation))
                         if Port(g.id, s) in out_of)
            vertices.append((ins, outs))
    return ColoringSystem(len(roots), tuple(crossings), tuple(virtuals), tuple(vertices))


def _solve(system: ColoringSystem, s: FiniteVQS) -> int:
    n = s.size
    op, bar = s.op, s.bar
    fpow = {k: s.f_power(k) for k in (1, -1)}
    # Each rule lists the variables it touches and a propagator returning
    # (forced assignments, consistent?) given a partial assignment.
    watch: list[list[int]] = [[] for _ in range(system.n_vars)]
    rules = []

    def add(vars_, fn):
        k = len(rules)
        rules.append(fn)
        for v in set(vars_):
            watch[v].append(k)

    for i, o, u, sign in system.crossings:
        def cross(val, i=i, o=o, u=u, sign=sign):
            b = val[o]
            if b is None:
                return []
            b_eff = b if sign > 0 else bar[b]
            if val[i] is not None:
                return [(u, op[val[i]][b_eff])]
            if val[u] is not None:
                return [(i, op[val[u]][bar[b_eff]])]
            return []
        add((i, o, u), cross)
    for i, o, k in system.virtuals:
        fwd, back = fpow[k], fpow[-k]

        def virt(val, i=i, o=o, fwd=fwd, back=back):
            if val[i] is not None:
                return [(o, fwd[val[i]])]
            if val[o] is not None:
                return [(i, back[val[o]])]
            return []
        add((i, o), virt)
    for ins, outs in system.vertices:
        def vert(val, ins=ins, outs=outs):
            for x in ins:
                if val[x] is not None:
                    a = val[x]
                    break
            else:
                for x in outs:
                    if val[x] is not None:
                        a = bar[val[x]]
                        break
                else:
                    return []
            return [(x, a) for x in ins] + [(x, bar[a]) for x in outs]
        add(ins + outs, vert)

    val: list[int | None] = [None] * system.n_vars

    def assign(v, c, trail) -> bool:
        stack = [(v, c)]
        while stack:
            x, cx = stack.pop()
            if val[x] is not None:
                if val[x] != cx:
                    return False
                continue
            val[x] = cx
            trail.append(x)
            for r in watch[x]:
                stack.extend(rules[r](val))
        return True

    def rec(start: int) -> int:
        v = start
        while v < system.n_vars and val[v] is not None:
            v += 1
        if v == system.n_vars:
            return 1
        total = 0
        for c in range(n):
            trail: list[int] = []
            if assign(v, c, trail):
                total += rec(v + 1)
            for x in trail:
                val[x] = None
        return total

    return rec(0)


def count_colorings(code: VsgCode, s: FiniteVQS, variant: int = 0,
                    max_arcs: int = DEFAULT_MAX_ARCS, check: bool = True) -> int:
    """Colorings of ``realize(code, variant)`` by ``s``."""
    require_valid(code)
    if check and code.vertices:
        report = validate_vqs(s, gcd_valence(code))
        if not report.ok:
            raise StructureError(f"structure fails for d={gcd_valence(code)}: "
                                 + ", ".join(sorted(report.rules())))
    system = coloring_system(realize(code, variant))
    if system.n_vars > max_arcs:
        raise BudgetError(f"{system.n_vars} arcs exceeds the budget of {max_arcs}")
    return _solve(system, s)


def brute_force_colorings(code: VsgCode, s: FiniteVQS) -> int:
    """Independent count straight from the code, for structures with f = id.

    Arcs run between consecutive under-passages and vertices of each edge;
    virtual crossings never appear, which is exactly why f must be trivial.
    Every assignment of elements to arcs is tried.
    """
    if any(s.f[a] != a for a in range(s.size)):
        raise ValueError("the code-level oracle only handles f = id")
    require_valid(code)
    arcs = []  # per edge: list of arc ids, one per under-passage gap
    over_arc = {}  # crossing label -> arc carrying the over strand
    under = {}  # label -> (in arc, out arc, sign)
    start_arc, end_arc = {}, {}
    for e in code.edges:
        cur = len(arcs)
        arcs.append(e.id)
        start_arc[e.id] = cur
        for p in code.passages[e.id]:
            if p.role == "o":
                over_arc[p.crossing] = cur
            else:
                nxt = len(arcs)
                arcs.append(e.id)
                under[p.crossing] = (cur, nxt, p.sign)
                cur = nxt
        end_arc[e.id] = cur
    total = 0
    for val in itertools.product(range(s.size), repeat=len(arcs)):
        ok = True
        for c, (i, o, sign) in under.items():
            b = val[over_arc[c]]
            if val[o] != s.op[val[i]][b if sign > 0 else s.bar[b]]:
                ok = False
                break
        if not ok:
            continue
        for v in code.vertices:
            ins = [val[end_arc[e.id]] for e in code.edges if e.head == v]
            outs = [val[start_arc[e.id]] for e in code.edges if e.tail == v]
            if ins:
                a = ins[0]
            elif outs:
                a = s.bar[outs[0]]
            else:
                continue
            if any(x != a for x in ins) or any(x != s.bar[a] for x in outs):
                ok = False
                break
        total += ok
    return total
