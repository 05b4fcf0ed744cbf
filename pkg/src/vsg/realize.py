"""Planar diagrams with virtual crossings realizing a code, and the way back.

Vertex and classical-crossing gadgets sit on a large circle. Each gadget
exposes its ports as short radial stubs in the required cyclic order, and
consecutive ports along an edge are joined by straight chords. Wherever two
pieces cross, a virtual crossing is declared. All geometry is exact: gadget
and stub coordinates are integers, crossing points are rationals.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from vsg.code import HEAD, OVER, TAIL, UNDER, Edge, Passage, VsgCode, require_valid

RING_RADIUS = 1_000_000
STUB_LENGTH = 20_000
MAX_ATTEMPTS = 64

# Counterclockwise end order of a classical crossing, by sign.
CLASSICAL_ENDS = {1: ("oi", "ui", "oo", "uo"), -1: ("oi", "uo", "oo", "ui")}


class DiagramError(ValueError):
    """A diagram is structurally malformed."""


Point = tuple[Fraction, Fraction]


class Port(NamedTuple):
    gadget: str
    slot: int


@dataclass(frozen=True)
class Gadget:
    id: str
    kind: str  # "vertex" | "classical" | "virtual"
    position: Point
    rotation: tuple = ()  # vertex: half-edge per slot, counterclockwise
    label: str = ""
    sign: int = 0
    ends: tuple[str, ...] = ()  # crossing end name per slot, counterclockwise

    def over_slots(self) -> tuple[int, int]:
        return (self.ends.index("oi"), self.ends.index("oo"))


@dataclass(frozen=True)
class Arc:
    edge: str
    segment: int
    points: tuple[Point, ...]
    start: Port
    end: Port


@dataclass(frozen=True)
class PlanarDiagram:
    gadgets: tuple[Gadget, ...]
    arcs: tuple[Arc, ...]
    _lookup: dict = field(default=None, init=False, repr=False, compare=False)

    def gadget(self, gid: str) -> Gadget:
        if self._lookup is None:
            object.__setattr__(self, "_lookup", {g.id: g for g in self.gadgets})
        return self._lookup[gid]

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gadgets if g.kind == kind)


# -- exact geometry -------------------------------------------------------------------


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


class _Degenerate(Exception):
    pass


def _intersection(a, b, c, d):
    """Proper crossing parameter (t on ab, u on cd) or None; raises on degeneracy."""
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        denom = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
        t = Fraction((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0]), denom)
        u = Fraction((c[0] - a[0]) * (b[1] - a[1]) - (c[1] - a[1]) * (b[0] - a[0]), denom)
        return t, u
    if (d1 == 0 and _on_segment(a, c, d)) or (d2 == 0 and _on_segment(b, c, d)) \
            or (d3 == 0 and _on_segment(c, a, b)) or (d4 == 0 and _on_segment(d, a, b)):
        raise _Degenerate
    return None


def _unit(angle: float, length: int) -> tuple[int, int]:
    return round(length * math.cos(angle)), round(length * math.sin(angle))


# -- realization ------------------------------------------------------------------------


@dataclass
class _Route:
    edge: str
    index: int  # segment index along the edge
    start: Port
    end: Port
    pts: list  # integer points P_a, S_a, S_b, P_b


def _plan(code: VsgCode):
    """Gadgets (without positions) and port-to-port routes of every edge."""
    sign = {}
    for e in code.edges:
        for p in code.passages[e.id]:
            sign[p.crossing] = p.sign
    order = [("vertex", v) for v in code.vertices] + [("classical", c) for c in code.labels()]
    slot_of = {}
    for v in code.vertices:
        for s, h in enumerate(code.rotations[v]):
            slot_of[("v:" + v, h)] = s
    routes = []
    for e in code.edges:
        cur = Port("v:" + e.tail, slot_of[("v:" + e.tail, (e.id, TAIL))])
        idx = 0
        for p in code.passages[e.id]:
            ends = CLASSICAL_ENDS[p.sign]
            end_in, end_out = ("oi", "oo") if p.role == OVER else ("ui", "uo")
            gid = "x:" + p.crossing
            routes.append(_Route(e.id, idx, cur, Port(gid, ends.index(end_in)), []))
            cur = Port(gid, ends.index(end_out))
            idx += 1
        routes.append(_Route(e.id, idx, cur, Port("v:" + e.head, slot_of[("v:" + e.head, (e.id, HEAD))]), []))
    return order, sign, routes


def realize(code: VsgCode, variant: int = 0) -> PlanarDiagram:
    """Diagram whose classical Gauss code is ``code``.

    ``variant`` selects a different (still deterministic) placement, giving
    distinct realizations of the same code.
    """
    require_valid(code)
    order, sign, routes = _plan(code)
    if variant:
        random.Random(variant).shuffle(order)
    n = max(len(order), 1)
    slots = {}
    for kind, name in order:
        slots[(kind, name)] = len(code.rotations[name]) if kind == "vertex" else 4
    for attempt in range(MAX_ATTEMPTS):
        try:
            return _layout(code, order, sign, routes, slots, n, variant, attempt)
        except _Degenerate:
            continue
    raise RuntimeError("could not find a non-degenerate layout")


def _layout(code, order, sign, routes, slots, n, variant, attempt):
    pos = {}
    stub = {}
    for i, (kind, name) in enumerate(order):
        gid = ("v:" if kind == "vertex" else "x:") + name
        theta = 2 * math.pi * i / n + 0.001 * attempt * (i + 1)
        x, y = _unit(theta, RING_RADIUS)
        # Deterministic index-scaled nudge away from accidental symmetries.
        pos[gid] = (x + 7 * attempt * (i + 1) + 3 * (i + 1), y + 11 * attempt * (i + 1) + 5 * (i * i + 1))
        m = slots[(kind, name)]
        offset = 0.37 * (i + 1) + 0.61 * variant + 0.23 * attempt
        jitter = random.Random(f"{variant}:{attempt}:{i}")
        for s in range(m):
            # Irregular spacing keeps chords between stubs off the centre.
            wobble = 0.35 * (jitter.random() - 0.5) if m > 1 else 0.0
            dx, dy = _unit(offset + 2 * math.pi * (s + wobble) / m, STUB_LENGTH)
            stub[(gid, s)] = (pos[gid][0] + dx, pos[gid][1] + dy)
    for r in routes:
        r.pts = [pos[r.start.gadget], stub[r.start], stub[r.end], pos[r.end.gadget]]

    segs = []  # (route index, part, a, b, gadget for stubs)
    for ri, r in enumerate(routes):
        segs.append((ri, 0, r.pts[0], r.pts[1], r.start.gadget))
        segs.append((ri, 1, r.pts[1], r.pts[2], None))
        segs.append((ri, 2, r.pts[2], r.pts[3], r.end.gadget))

    # Isolated vertices have no stubs; keep every piece clear of them.
    lonely = [pos["v:" + v] for v in code.vertices if not code.rotations[v]]
    for _, _, a, b, _ in segs:
        for p in lonely:
            if _on_segment(p, a, b):
                raise _Degenerate
    # Stub directions of one gadget must differ.
    for gid in pos:
        ends = [stub[k] for k in stub if k[0] == gid]
        if len(set(ends)) != len(ends):
            raise _Degenerate

    hits = []  # (route1, part1, t, route2, part2, u, point)
    points_seen = set()
    for i in range(len(segs)):
        ri, pi, a, b, ga = segs[i]
        for j in range(i + 1, len(segs)):
            rj, pj, c, d, gb = segs[j]
            if ri == rj and abs(pi - pj) == 1:
                continue
            if ga is not None and ga == gb and ((pi == 0 and a == c) or (pi == 0 and a == d)
                                               or (pi == 2 and b == c) or (pi == 2 and b == d)):
                # Two stubs of one gadget meet only at its centre.
                if _cross(a, b, c) == 0 and _cross(a, b, d) == 0:
                    # Opposite stubs are collinear but only share the centre point.
                    shared = a if pi == 0 else b
                    other1 = b if pi == 0 else a
                    other2 = d if shared == c else c
                    if (other1[0] - shared[0]) * (other2[0] - shared[0]) + \
                            (other1[1] - shared[1]) * (other2[1] - shared[1]) > 0:
                        raise _Degenerate
                continue
            if ri == rj and {pi, pj} == {0, 2} and routes[ri].start.gadget == routes[ri].end.gadget:
                # A route returning to its own gadget: the stubs meet at the centre.
                continue
            res = _intersection(a, b, c, d)
            if res is None:
                continue
            t, u = res
            pt = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            if pt in points_seen:
                raise _Degenerate
            points_seen.add(pt)
            hits.append((ri, pi, t, rj, pj, u, pt))

    gadgets = []
    for v in code.vertices:
        gid = "v:" + v
        gadgets.append(Gadget(gid, "vertex", _frac(pos[gid]), rotation=tuple(code.rotations[v])))
    for c in code.labels():
        gid = "x:" + c
        gadgets.append(Gadget(gid, "classical", _frac(pos[gid]), label=c, sign=sign[c],
                              ends=CLASSICAL_ENDS[sign[c]]))

    # Order the virtual crossings deterministically by where they occur.
    hits.sort(key=lambda h: (h[0], h[1], h[2]))
    cuts: dict[int, list] = {i: [] for i in range(len(routes))}
    for k, (ri, pi, t, rj, pj, u, pt) in enumerate(hits, 1):
        gid = f"w{k}"
        da = _direction(routes[ri].pts, pi)
        db = _direction(routes[rj].pts, pj)
        if da[0] * db[1] - da[1] * db[0] > 0:
            ends = ("a_in", "b_in", "a_out", "b_out")
        else:
            ends = ("a_in", "b_out", "a_out", "b_in")
        gadgets.append(Gadget(gid, "virtual", pt, ends=ends))
        cuts[ri].append(((pi, t), pt, Port(gid, ends.index("a_in")), Port(gid, ends.index("a_out"))))
        cuts[rj].append(((pj, u), pt, Port(gid, ends.index("b_in")), Port(gid, ends.index("b_out"))))

    arcs = []
    seg_counter: dict[str, int] = {}
    for ri, r in enumerate(routes):
        pts = [_frac(p) for p in r.pts]
        cs = sorted(cuts[ri], key=lambda c: c[0])
        current = [pts[0]]
        start = r.start
        part = 0
        for (cpart, _), pt, p_in, p_out in cs:
            while part < cpart:
                part += 1
                current.append(pts[part])
            current.append(pt)
            arcs.append(_arc(r.edge, seg_counter, current, start, p_in))
            current = [pt]
            start = p_out
        while part < 3:
            part += 1
            current.append(pts[part])
        arcs.append(_arc(r.edge, seg_counter, current, start, r.end))
    return PlanarDiagram(tuple(gadgets), tuple(arcs))


def _arc(edge, counter, pts, start, end) -> Arc:
    idx = counter.get(edge, 0)
    counter[edge] = idx + 1
    clean = [pts[0]]
    for p in pts[1:]:
        if p != clean[-1]:
            clean.append(p)
    return Arc(edge, idx, tuple(clean), start, end)


def _direction(pts, part):
    a, b = pts[part], pts[part + 1]
    return b[0] - a[0], b[1] - a[1]


def _frac(p) -> Point:
    return Fraction(p[0]), Fraction(p[1])


# -- extraction --------------------------------------------------------------------------


def _crossing_passage(g: Gadget, slot: int) -> tuple[Passage, int]:
    end = g.ends[slot]
    if end not in ("oi", "ui"):
        raise DiagramError(f"edge enters {g.id} through an outgoing end {end}")
    role = OVER if end == "oi" else UNDER
    out_slot = g.ends.index("oo" if role == OVER else "uo")
    if (out_slot - slot) % 4 != 2:
        raise DiagramError(f"strand ends of {g.id} are not transversal")
    return Passage(g.label, role, g.sign), out_slot


def extract_code(diagram: PlanarDiagram) -> VsgCode:
    """Read passages along each edge, skipping virtual crossings."""
    by_start: dict[Port, Arc] = {}
    for a in diagram.arcs:
        if a.start in by_start:
            raise DiagramError(f"two arcs leave port {a.start}")
        by_start[a.start] = a
    try:
        vertices = [g for g in diagram.gadgets if g.kind == "vertex"]
        edge_order: list[str] = []
        for a in diagram.arcs:
            if a.edge not in edge_order:
                edge_order.append(a.edge)
        tails: dict[str, Port] = {}
        for g in vertices:
            for s, (e, end) in enumerate(g.rotation):
                if end == TAIL:
                    tails[e] = Port(g.id, s)
        edges, passages = [], {}
        used = set()
        for e in edge_order:
            if e not in tails:
                raise DiagramError(f"edge {e} has no tail port")
            port = tails[e]
            tail_vertex = port.gadget[2:]
            seq = []
            steps = 0
            while True:
                arc = by_start.get(port)
                if arc is None:
                    raise DiagramError(f"dangling port {port}")
                if arc.edge != e:
                    raise DiagramError(f"arc of edge {arc.edge} found while walking {e}")
                used.add(arc.start)
                g = diagram.gadget(arc.end.gadget)
                steps += 1
                if steps > len(diagram.arcs):
                    raise DiagramError(f"edge {e} does not terminate")
                if g.kind == "virtual":
                    port = Port(g.id, (arc.end.slot + 2) % 4)
                elif g.kind == "classical":
                    p, out = _crossing_passage(g, arc.end.slot)
                    seq.append(p)
                    port = Port(g.id, out)
                else:
                    if g.rotation[arc.end.slot] != (e, HEAD):
                        raise DiagramError(f"edge {e} ends at the wrong vertex slot")
                    edges.append(Edge(e, tail_vertex, g.id[2:]))
                    break
            passages[e] = tuple(seq)
        if len(used) != len(diagram.arcs):
            raise DiagramError("diagram has arcs not reachable from any edge")
    except (KeyError, IndexError, ValueError) as exc:
        if isinstance(exc, DiagramError):
            raise
        raise DiagramError(f"malformed diagram: {exc}") from exc
    return VsgCode(
        tuple(g.id[2:] for g in vertices),
        tuple(edges),
        {g.id[2:]: tuple(g.rotation) for g in vertices},
        passages,
    )


# -- JSON ----------------------------------------------------------------------------------


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _unq(s: str) -> Fraction:
    return Fraction(s)


def diagram_to_json(d: PlanarDiagram) -> dict:
    gadgets = []
    for g in d.gadgets:
        item = {"id": g.id, "kind": g.kind, "position": [_q(g.position[0]), _q(g.position[1])]}
        if g.kind == "vertex":
            item["rotation"] = [list(h) for h in g.rotation]
        else:
            item["ends"] = list(g.ends)
        if g.kind == "classical":
            item["label"] = g.label
            item["sign"] = "+" if g.sign > 0 else "-"
            item["over"] = list(g.over_slots())
        gadgets.append(item)
    arcs = [
        {
            "edge": a.edge,
            "segment": a.segment,
            "points": [[_q(x), _q(y)] for x, y in a.points],
            "from": [a.start.gadget, a.start.slot],
            "to": [a.end.gadget, a.end.slot],
        }
        for a in d.arcs
    ]
    return {"version": 1, "gadgets": gadgets, "arcs": arcs}


def diagram_from_json(doc: dict) -> PlanarDiagram:
    try:
        gadgets = []
        for g in doc["gadgets"]:
            pos = (_unq(g["position"][0]), _unq(g["position"][1]))
            if g["kind"] == "vertex":
                gadgets.append(Gadget(g["id"], "vertex", pos,
                                      rotation=tuple((h[0], h[1]) for h in g["rotation"])))
            elif g["kind"] == "classical":
                gadgets.append(Gadget(g["id"], "classical", pos, label=g["label"],
                                      sign=1 if g["sign"] == "+" else -1, ends=tuple(g["ends"])))
            elif g["kind"] == "virtual":
                gadgets.append(Gadget(g["id"], "virtual", pos, ends=tuple(g["ends"])))
            else:
                raise DiagramError(f"unknown gadget kind {g['kind']!r}")
        arcs = [
            Arc(a["edge"], int(a["segment"]),
                tuple((_unq(x), _unq(y)) for x, y in a["points"]),
                Port(a["from"][0], int(a["from"][1])), Port(a["to"][0], int(a["to"][1])))
            for a in doc["arcs"]
        ]
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        if isinstance(exc, DiagramError):
            raise
        raise DiagramError(f"malformed diagram JSON: {exc}") from exc
    return PlanarDiagram(tuple(gadgets), tuple(arcs))


def diagram_dumps(d: PlanarDiagram) -> str:
    return json.dumps(diagram_to_json(d), sort_keys=True, separators=(",", ":"))


def diagram_loads(text: str) -> PlanarDiagram:
    return diagram_from_json(json.loads(text))


# -- SVG ------------------------------------------------------------------------------------


def render_svg(d: PlanarDiagram, size: int = 800) -> str:
    pts = [g.position for g in d.gadgets] + [p for a in d.arcs for p in a.points]
    if pts:
        xs = [float(p[0]) for p in pts]
        ys = [float(p[1]) for p in pts]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    else:
        lo_x = lo_y = -1.0
        hi_x = hi_y = 1.0
    span = max(hi_x - lo_x, hi_y - lo_y, 1.0)
    pad = 0.08 * span
    scale = size / (span + 2 * pad)

    def tx(p):
        return (float(p[0]) - lo_x + pad) * scale, (hi_y - float(p[1]) + pad) * scale

    r_gap = 0.012 * size
    r_virtual = 0.009 * size
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
        'markerHeight="6" orient="auto"><polygon points="0,0 10,5 0,10" fill="black"/></marker></defs>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for a in d.arcs:
        coords = " L ".join(f"{x:.2f} {y:.2f}" for x, y in map(tx, a.points))
        target = d.gadget(a.end.gadget).kind
        marker = ' marker-end="url(#arrow)"' if target == "vertex" else ""
        out.append(f'<path class="arc" data-edge="{a.edge}" d="M {coords}" fill="none" '
                   f'stroke="black" stroke-width="1.5"{marker}/>')
    by_start = {a.start: a for a in d.arcs}
    by_end = {a.end: a for a in d.arcs}
    for g in d.gadgets:
        if g.kind != "classical":
            continue
        cx, cy = tx(g.position)
        out.append(f'<circle class="under-gap" cx="{cx:.2f}" cy="{cy:.2f}" r="{r_gap:.2f}" fill="white"/>')
        i_slot, o_slot = g.over_slots()
        a_in = by_end.get(Port(g.id, i_slot))
        a_out = by_start.get(Port(g.id, o_slot))
        if a_in is not None and a_out is not None:
            (x1, y1), (x2, y2) = tx(a_in.points[-2]), tx(a_out.points[1])
            out.append(f'<line class="over" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                       f'stroke="black" stroke-width="1.5"/>')
    for g in d.gadgets:
        cx, cy = tx(g.position)
        if g.kind == "virtual":
            out.append(f'<circle class="virtual" cx="{cx:.2f}" cy="{cy:.2f}" r="{r_virtual:.2f}" '
                       f'fill="none" stroke="black"/>')
        elif g.kind == "vertex":
            out.append(f'<circle class="vertex" cx="{cx:.2f}" cy="{cy:.2f}" r="{0.008 * size:.2f}" '
                       f'fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
