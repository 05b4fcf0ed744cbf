"""Yamada polynomial of a virtual spatial graph code.

Every classical crossing is resolved three ways (A-smoothing, B-smoothing,
4-valent vertex); each resulting abstract graph is evaluated by
deletion-contraction down to bouquets. Virtual crossings never appear in a
code, so they are ignored automatically.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache

import networkx as nx

from vsg.code import OVER, VsgCode, require_valid
from vsg.laurent import ONE, SIGMA, ZERO, LaurentPoly

DEFAULT_MAX_CROSSINGS = 14

# Crossing ends: over-in, over-out, under-in, under-out.
OI, OO, UI, UO = "oi", "oo", "ui", "uo"


class BudgetError(RuntimeError):
    """A computation would exceed its configured budget."""


class NormalizationError(ValueError):
    """The normalized polynomial is undefined because R = 0."""


def smoothing_pairs(sign: int, kind: str) -> tuple[tuple[str, str], tuple[str, str]]:
    """End pairings of an A- or B-smoothing.

    For a positive crossing the A-smoothing is the orientation-respecting one;
    for a negative crossing the two are exchanged.
    """
    oriented = ((UI, OO), (OI, UO))
    unoriented = ((UI, OI), (UO, OO))
    if (kind == "A") == (sign > 0):
        return oriented
    return unoriented


def abstract_segments(code: VsgCode) -> list[tuple[tuple, tuple]]:
    """Segments between consecutive nodes along each edge.

    A node end is ``("v", vertex)`` or ``("x", label, end)``.
    """
    segs = []
    for e in code.edges:
        prev = ("v", e.tail)
        for p in code.passages[e.id]:
            end_in, end_out = (OI, OO) if p.role == OVER else (UI, UO)
            segs.append((prev, ("x", p.crossing, end_in)))
            prev = ("x", p.crossing, end_out)
        segs.append((prev, ("v", e.head)))
    return segs


# -- graph evaluation --------------------------------------------------------------

Graph = tuple[int, tuple[tuple[int, int], ...]]  # (vertex count, sorted edge list)


def _normalize(n: int, edges) -> Graph:
    """Deterministic relabelling so that equal-looking graphs share a memo key."""
    deg = [0] * n
    nbrs = defaultdict(list)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        nbrs[a].append(b)
        nbrs[b].append(a)
    key = {v: (deg[v], tuple(sorted(deg[w] for w in nbrs[v]))) for v in range(n)}
    order = sorted(range(n), key=lambda v: (key[v], v))
    pos = {v: i for i, v in enumerate(order)}
    return n, tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in edges))


def _components(n: int, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    groups = defaultdict(list)
    for v in range(n):
        groups[find(v)].append(v)
    comps = []
    for vs in groups.values():
        idx = {v: i for i, v in enumerate(vs)}
        es = [(idx[a], idx[b]) for a, b in edges if a in idx]
        comps.append((len(vs), es))
    return comps


def _suppress(n: int, edges) -> Graph:
    """Smooth away every degree-2 vertex not carrying a loop, then normalize.

    R(G) = R(G/e) at such a vertex, so this changes nothing but the size.
    """
    ends: list[list[int]] = [[] for _ in range(n)]  # edge indices per vertex end
    edges = [list(e) for e in edges]
    alive = [True] * len(edges)
    for k, (a, b) in enumerate(edges):
        ends[a].append(k)
        ends[b].append(k)
    gone = [False] * n
    stack = [v for v in range(n) if len(ends[v]) == 2]
    while stack:
        v = stack.pop()
        if gone[v] or len(ends[v]) != 2:
            continue
        k1, k2 = ends[v]
        if k1 == k2:
            continue  # a lone circle
        e1, e2 = edges[k1], edges[k2]
        u = e1[0] if e1[1] == v else e1[1]
        w = e2[0] if e2[1] == v else e2[1]
        # Reuse k1 for the merged edge u-w and drop k2.
        edges[k1] = [u, w]
        alive[k2] = False
        ends[w] = [k1 if k == k2 else k for k in ends[w]]
        if u == w:
            # ends[u] already lists k1 once; a loop needs it twice.
            ends[u] = [k for k in ends[u] if k != k1] + [k1, k1]
        gone[v] = True
        ends[v] = []
        for x in (u, w):
            if len(ends[x]) == 2:
                stack.append(x)
    keep = [v for v in range(n) if not gone[v]]
    idx = {v: i for i, v in enumerate(keep)}
    out = [(idx[a], idx[b]) for k, (a, b) in enumerate(edges) if alive[k]]
    return _normalize(len(keep), out)


def graph_eval(n: int, edges) -> LaurentPoly:
    """Yamada polynomial of an abstract multigraph with ``n`` vertices.

    ``edges`` is an iterable of vertex-index pairs; loops are allowed.
    """
    return _eval(_suppress(n, list(edges)))


@lru_cache(maxsize=200_000)
def _eval(g: Graph) -> LaurentPoly:
    n, edges = g
    if n == 0:
        return ONE
    comps = _components(n, edges)
    if len(comps) > 1:
        out = ONE
        for cn, ces in comps:
            out = out * _eval(_normalize(cn, ces))
        return out
    return _eval_connected(n, list(edges))


def _eval_connected(n: int, edges: list[tuple[int, int]]) -> LaurentPoly:
    loops = [e for e in edges if e[0] == e[1]]
    if loops:
        rest = [e for e in edges if e[0] != e[1]]
        return (-SIGMA) ** len(loops) * _eval(_normalize(n, rest))
    if n == 1:
        return LaurentPoly.constant(-1)
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if min(deg) <= 1:
        # A pendant edge is a bridge: deletion and contraction cancel.
        return ZERO
    if 2 in deg:
        # Deleting either edge at a degree-2 vertex leaves a bridge, so R(G) = R(G/e).
        return _eval(_suppress(n, edges))
    cut = _cut_vertex(n, edges)
    if cut is not None:
        return _wedge_split(n, edges, cut)
    e = edges[0]
    rest = list(edges[1:])
    return _eval(_normalize(n, rest)) + _eval(_contract(n, edges, e))


def _contract(n: int, edges, e) -> Graph:
    a, b = e
    keep, gone = min(a, b), max(a, b)
    out = []
    removed = False
    for x, y in edges:
        if not removed and (x, y) == e:
            removed = True
            continue
        x = keep if x == gone else x
        y = keep if y == gone else y
        x = x - 1 if x > gone else x
        y = y - 1 if y > gone else y
        out.append((min(x, y), max(x, y)))
    return _normalize(n - 1, out)


def _cut_vertex(n: int, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    for v in nx.articulation_points(g):
        return v
    return None


def _wedge_split(n: int, edges, cut: int) -> LaurentPoly:
    others = [v for v in range(n) if v != cut]
    parent = {v: v for v in others}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        if a != cut and b != cut:
            parent[find(a)] = find(b)
    blocks = defaultdict(set)
    for v in others:
        blocks[find(v)].add(v)
    out = ONE
    for members in blocks.values():
        vs = sorted(members) + [cut]
        idx = {v: i for i, v in enumerate(vs)}
        es = [(idx[a], idx[b]) for a, b in edges if (a in idx and b in idx) and (a in members or b in members)]
        out = out * _eval(_normalize(len(vs), es))
    return LaurentPoly.constant((-1) ** (len(blocks) - 1)) * out


def bouquet_value(n: int) -> LaurentPoly:
    """R(B_n) = -(-sigma)^n."""
    return -((-SIGMA) ** n)


# -- state sum -----------------------------------------------------------------------


def state_graph(code: VsgCode, state: dict[str, str]) -> tuple[int, list[tuple[int, int]]]:
    """Abstract graph after resolving each crossing as ``A``, ``B`` or ``X`` (vertex)."""
    node_of: dict[tuple, int] = {}
    n = 0
    for v in code.vertices:
        node_of[("v", v)] = n
        n += 1
    sign = {}
    for e in code.edges:
        for p in code.passages[e.id]:
            sign[p.crossing] = p.sign
    for label in code.labels():
        kind = state[label]
        if kind == "X":
            for end in (OI, OO, UI, UO):
                node_of[("x", label, end)] = n
            n += 1
        else:
            for a, b in smoothing_pairs(sign[label], kind):
                node_of[("x", label, a)] = n
                node_of[("x", label, b)] = n
                n += 1
    edges = [(node_of[a], node_of[b]) for a, b in abstract_segments(code)]
    return n, edges


def yamada(code: VsgCode, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPoly:
    """R(G): sum over 3^c crossing resolutions of A^(#A - #B) * R(state graph)."""
    require_valid(code)
    labels = code.labels()
    if len(labels) > max_crossings:
        raise BudgetError(f"{len(labels)} crossings exceed the state-sum budget of {max_crossings}")
    totals: dict[int, LaurentPoly] = {}
    for kinds in itertools.product("ABX", repeat=len(labels)):
        state = dict(zip(labels, kinds))
        weight = kinds.count("A") - kinds.count("B")
        n, edges = state_graph(code, state)
        val = graph_eval(n, edges)
        totals[weight] = totals.get(weight, ZERO) + val
    out = ZERO
    for w, val in totals.items():
        out = out + val.shift(w)
    return out


def normalize(r: LaurentPoly, strict: bool = True) -> LaurentPoly:
    """(-A)^(-m) R with m the smallest exponent of R."""
    if r.is_zero():
        if strict:
            raise NormalizationError("R(G) = 0; the normalization is undefined")
        return ZERO
    m = r.min_exponent()
    return r.shift(-m) * ((-1) ** (m % 2))


def yamada_normalized(code: VsgCode, max_crossings: int = DEFAULT_MAX_CROSSINGS,
                      strict: bool = True) -> LaurentPoly:
    return normalize(yamada(code, max_crossings), strict)
