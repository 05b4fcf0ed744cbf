"""Named example codes and random code generation."""

from __future__ import annotations

import random

from vsg.code import HEAD, OVER, TAIL, UNDER, Edge, Passage, VsgCode
from vsg.moves import (
    APPLY,
    MoveError,
    MoveSite,
    apply_move,
    enumerate_moves,
)


def _p(label: str, role: str, sign: str = "+") -> Passage:
    return Passage(label, role, 1 if sign == "+" else -1)


def theta() -> VsgCode:
    """Planar theta graph: three edges u -> v, no crossings."""
    return VsgCode(
        ("u", "v"),
        (Edge("e1", "u", "v"), Edge("e2", "u", "v"), Edge("e3", "u", "v")),
        {
            "u": (("e1", TAIL), ("e2", TAIL), ("e3", TAIL)),
            "v": (("e3", HEAD), ("e2", HEAD), ("e1", HEAD)),
        },
        {"e1": (), "e2": (), "e3": ()},
    )


def knot(passages=(), vertex: str = "v", edge: str = "e") -> VsgCode:
    """One vertex carrying one loop edge; a knot with a marked point."""
    return VsgCode(
        (vertex,),
        (Edge(edge, vertex, vertex),),
        {vertex: ((edge, TAIL), (edge, HEAD))},
        {edge: tuple(passages)},
    )


def unknot() -> VsgCode:
    return knot()


def kink(sign: str = "+", first: str = OVER) -> VsgCode:
    second = UNDER if first == OVER else OVER
    return knot([_p("c", first, sign), _p("c", second, sign)])


def virtual_trefoil() -> VsgCode:
    return knot([_p("c1", OVER), _p("c2", OVER), _p("c1", UNDER), _p("c2", UNDER)])


def trefoil() -> VsgCode:
    return knot([
        _p("c1", OVER), _p("c2", UNDER), _p("c3", OVER),
        _p("c1", UNDER), _p("c2", OVER), _p("c3", UNDER),
    ])


def bouquet(n: int) -> VsgCode:
    edges = tuple(Edge(f"e{i}", "v", "v") for i in range(1, n + 1))
    rot = tuple(h for e in edges for h in ((e.id, TAIL), (e.id, HEAD)))
    return VsgCode(("v",), edges, {"v": rot}, {e.id: () for e in edges})


def two_loops(p1=(), p2=()) -> VsgCode:
    """Two one-loop vertices; passages given per loop."""
    return VsgCode(
        ("u", "v"),
        (Edge("e1", "u", "u"), Edge("e2", "v", "v")),
        {"u": (("e1", TAIL), ("e1", HEAD)), "v": (("e2", TAIL), ("e2", HEAD))},
        {"e1": tuple(p1), "e2": tuple(p2)},
    )


def virtual_hopf(sign: str = "+") -> VsgCode:
    """Two loops sharing a single classical crossing."""
    return two_loops([_p("c1", UNDER, sign)], [_p("c1", OVER, sign)])


def hopf(sign: str = "+") -> VsgCode:
    return two_loops(
        [_p("c1", OVER, sign), _p("c2", UNDER, sign)],
        [_p("c1", UNDER, sign), _p("c2", OVER, sign)],
    )


def empty() -> VsgCode:
    return VsgCode((), (), {}, {})


def disjoint_union(a: VsgCode, b: VsgCode, prefixes=("a.", "b.")) -> VsgCode:
    def ren(code: VsgCode, pre: str):
        vertices = tuple(pre + v for v in code.vertices)
        edges = tuple(Edge(pre + e.id, pre + e.tail, pre + e.head) for e in code.edges)
        rot = {pre + v: tuple((pre + e, end) for e, end in r) for v, r in code.rotations.items()}
        pas = {
            pre + e: tuple(Passage(pre + p.crossing, p.role, p.sign) for p in seq)
            for e, seq in code.passages.items()
        }
        return vertices, edges, rot, pas

    va, ea, ra, pa = ren(a, prefixes[0])
    vb, eb, rb, pb = ren(b, prefixes[1])
    return VsgCode(va + vb, ea + eb, {**ra, **rb}, {**pa, **pb})


NAMED = {
    "theta": theta,
    "unknot": unknot,
    "kink": kink,
    "trefoil": trefoil,
    "virtual-trefoil": virtual_trefoil,
    "hopf": hopf,
    "virtual-hopf": virtual_hopf,
    "empty": empty,
}


def random_code(rng: random.Random, max_vertices: int = 3, max_crossings: int = 6,
                max_edges: int | None = None, min_crossings: int = 0) -> VsgCode:
    """Random valid code: every vertex has degree >= 1, crossings placed anywhere."""
    nv = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(1, nv + 1)]
    max_edges = max_edges or nv + 2
    ne = rng.randint(max(1, (nv + 1) // 2), max(max_edges, (nv + 1) // 2))
    edges = []
    uncovered = list(vertices)
    rng.shuffle(uncovered)
    for i in range(1, ne + 1):
        tail = uncovered.pop() if uncovered else rng.choice(vertices)
        head = uncovered.pop() if uncovered else rng.choice(vertices)
        if rng.random() < 0.5:
            tail, head = head, tail
        edges.append(Edge(f"e{i}", tail, head))
    rotations = {}
    for v in vertices:
        hs = [(e.id, end) for e in edges for end, w in ((TAIL, e.tail), (HEAD, e.head)) if w == v]
        rng.shuffle(hs)
        rotations[v] = tuple(hs)
    seqs: dict[str, list[Passage]] = {e.id: [] for e in edges}
    nc = rng.randint(min_crossings, max_crossings)
    for c in range(1, nc + 1):
        sign = rng.choice((1, -1))
        for role in (OVER, UNDER):
            e = rng.choice(edges).id
            seqs[e].insert(rng.randint(0, len(seqs[e])), Passage(f"x{c}", role, sign))
    return VsgCode(tuple(vertices), tuple(edges), rotations, {e: tuple(s) for e, s in seqs.items()})


def random_site(rng: random.Random, code: VsgCode, moves, max_crossings: int | None = None,
                kinds: set | None = None) -> MoveSite | None:
    """Uniform choice among the sites of ``code`` for the given moves.

    Sites are grouped by move and direction first so that rare reductions are
    not drowned out by the many insertion sites.
    """
    room = None if max_crossings is None else max(0, max_crossings - code.crossing_count())
    sites = enumerate_moves(code, moves, max_increase=room)
    if kinds is not None:
        sites = [s for s in sites if (s.move, s.direction) in kinds or s.move in kinds]
    if not sites:
        return None
    groups: dict = {}
    for s in sites:
        groups.setdefault((s.move, s.direction), []).append(s)
    key = rng.choice(sorted(groups))
    return rng.choice(groups[key])


def random_walk(rng: random.Random, code: VsgCode, moves, steps: int,
                max_crossings: int | None = None, kinds: set | None = None):
    """Apply up to ``steps`` random moves; returns (final code, sites used)."""
    used = []
    for _ in range(steps):
        site = random_site(rng, code, moves, max_crossings, kinds)
        if site is None:
            break
        try:
            code = apply_move(code, site)
        except MoveError:
            continue
        used.append(site)
    return code, used


def plant_triangle(rng: random.Random, code: VsgCode) -> VsgCode:
    """Insert three fresh crossings forming a realizable move-III triangle."""
    x, y, z = code.fresh_labels(3)
    o_t, o_m = rng.choice((1, -1)), rng.choice((1, -1))
    s_x, s_y = rng.choice((1, -1)), rng.choice((1, -1))
    o_b = o_m * s_x * s_y
    s_z = o_t * s_y * o_m
    top = [Passage(x, OVER, s_x), Passage(y, OVER, s_y)]
    mid = [Passage(x, UNDER, s_x), Passage(z, OVER, s_z)]
    bot = [Passage(y, UNDER, s_y), Passage(z, UNDER, s_z)]
    if o_t < 0:
        top.reverse()
    if o_m < 0:
        mid.reverse()
    if o_b < 0:
        bot.reverse()
    seqs = {e: list(s) for e, s in code.passages.items()}
    blocked: dict[str, set[int]] = {e: set() for e in seqs}
    for block in (top, mid, bot):
        e = rng.choice(code.edge_ids())
        gaps = [g for g in range(len(seqs[e]) + 1) if g not in blocked[e]]
        gap = rng.choice(gaps)
        seqs[e][gap:gap] = block
        # Gaps strictly inside an inserted block stay off limits.
        blocked[e] = {b + 2 if b > gap else b for b in blocked[e]} | {gap + 1}
    return code.with_changes(passages={e: tuple(s) for e, s in seqs.items()})
