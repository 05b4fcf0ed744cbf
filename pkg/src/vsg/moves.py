"""Reidemeister moves on Gauss codes.

Every move is addressed positionally (edge ids, passage indices, vertex ids and
rotation indices), never by crossing label, so a site computed on one code also
applies to any relabelling of it. Insertions draw fresh labels ``c<n>``.

Direction ``apply`` inserts crossings (or performs a self-inverse move) and
direction ``inverse`` deletes them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from vsg.code import (
    HEAD,
    OVER,
    TAIL,
    UNDER,
    Passage,
    VsgCode,
    canonical_key,
    require_valid,
)

APPLY = "apply"
INVERSE = "inverse"

CLASSICAL_MOVES = ("I", "II", "III", "IV", "V", "VI")
FORBIDDEN_MOVES = ("VI*", "VII*", "VIII*")
ALL_MOVES = CLASSICAL_MOVES + FORBIDDEN_MOVES

RIGID = frozenset({"I", "II", "III", "IV", "V"})
PLIABLE = RIGID | {"VI"}

# Moves that never change the crossing set and undo themselves at the same site.
SELF_INVERSE = frozenset({"III", "VI*", "VIII*"})


class MoveError(ValueError):
    """A site does not apply to the given code."""


class PolicyError(MoveError):
    """A forbidden move was requested without being allowed."""


def moveset(name: str, allow: Iterable[str] = ()) -> frozenset[str]:
    """``rigid`` or ``pliable`` plus any allowed forbidden moves."""
    base = {"rigid": RIGID, "pliable": PLIABLE}[name]
    allow = {a.upper() for a in allow}
    unknown = allow - set(FORBIDDEN_MOVES)
    if unknown:
        raise ValueError(f"not a forbidden move: {sorted(unknown)}")
    return frozenset(base | allow)


@dataclass(frozen=True, order=True)
class MoveSite:
    move: str
    direction: str
    params: tuple[tuple[str, object], ...] = ()

    def __getitem__(self, key: str):
        return dict(self.params)[key]

    @classmethod
    def make(cls, move: str, direction: str, **params) -> "MoveSite":
        return cls(move, direction, tuple(sorted(params.items())))

    def to_json(self) -> dict:
        return {"move": self.move, "direction": self.direction, **dict(self.params)}

    @classmethod
    def from_json(cls, doc: dict) -> "MoveSite":
        doc = dict(doc)
        try:
            move = doc.pop("move")
            direction = doc.pop("direction")
        except KeyError as exc:
            raise MoveError(f"move site lacks {exc}") from None
        if move not in ALL_MOVES or direction not in (APPLY, INVERSE):
            raise MoveError(f"unknown move {move!r}/{direction!r}")
        return cls.make(move, direction, **doc)

    def __str__(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.move}:{self.direction}({args})"


def sites_to_json(sites: Iterable[MoveSite]) -> str:
    return json.dumps([s.to_json() for s in sites], sort_keys=True, separators=(",", ":"))


def sites_from_json(text: str) -> list[MoveSite]:
    doc = json.loads(text)
    if isinstance(doc, dict):
        doc = [doc]
    return [MoveSite.from_json(d) for d in doc]


# -- small helpers -------------------------------------------------------------


def _other(role: str) -> str:
    return UNDER if role == OVER else OVER


def _out_sign(half_edge) -> int:
    """+1 for an outgoing half-edge (edge tail), -1 for incoming."""
    return 1 if half_edge[1] == TAIL else -1


class _Draft:
    """Mutable working copy of a code."""

    def __init__(self, code: VsgCode):
        self.code = code
        self.pas = {e: list(seq) for e, seq in code.passages.items()}
        self.rot = {v: list(r) for v, r in code.rotations.items()}

    def freeze(self) -> VsgCode:
        return self.code.with_changes(
            rotations={v: tuple(r) for v, r in self.rot.items()},
            passages={e: tuple(s) for e, s in self.pas.items()},
        )

    def add_at_vertex_end(self, half_edge, passages_outward: list[Passage]) -> None:
        """Place passages next to a vertex end, listed from the vertex outwards."""
        e, end = half_edge
        if end == TAIL:
            self.pas[e][0:0] = passages_outward
        else:
            self.pas[e].extend(reversed(passages_outward))

    def delete_labels(self, labels: set[str]) -> None:
        for e in self.pas:
            self.pas[e] = [p for p in self.pas[e] if p.crossing not in labels]


def _vertex_adjacent(code: VsgCode, half_edge) -> Passage | None:
    e, end = half_edge
    seq = code.passages[e]
    if not seq:
        return None
    return seq[0] if end == TAIL else seq[-1]


def _vertex_adjacent_index(code: VsgCode, half_edge) -> int | None:
    e, end = half_edge
    n = len(code.passages[e])
    if not n:
        return None
    return 0 if end == TAIL else n - 1


def _same_up_to_labels(a: VsgCode, b: VsgCode) -> bool:
    return canonical_key(a) == canonical_key(b)


# -- move I ----------------------------------------------------------------------


def _insert_I(code: VsgCode, edge: str, gap: int, first: str, sign: int) -> VsgCode:
    if edge not in code.passages or not 0 <= gap <= len(code.passages[edge]):
        raise MoveError("I: gap out of range")
    if first not in (OVER, UNDER) or sign not in (1, -1):
        raise MoveError("I: bad parameters")
    (c,) = code.fresh_labels(1)
    d = _Draft(code)
    d.pas[edge][gap:gap] = [Passage(c, first, sign), Passage(c, _other(first), sign)]
    return d.freeze()


def _reduce_I(code: VsgCode, edge: str, index: int) -> VsgCode:
    seq = code.passages.get(edge, ())
    if not 0 <= index < len(seq) - 1 or seq[index].crossing != seq[index + 1].crossing:
        raise MoveError("I: no kink at this position")
    d = _Draft(code)
    del d.pas[edge][index : index + 2]
    return d.freeze()


# -- move II ---------------------------------------------------------------------


def _insert_II(code, over_edge, over_gap, under_edge, under_gap, order, sign, under_first=0):
    for e, g in ((over_edge, over_gap), (under_edge, under_gap)):
        if e not in code.passages or not 0 <= g <= len(code.passages[e]):
            raise MoveError("II: gap out of range")
    if order not in ("same", "reversed") or sign not in (1, -1):
        raise MoveError("II: bad parameters")
    c, dd = code.fresh_labels(2)
    over_block = [Passage(c, OVER, sign), Passage(dd, OVER, -sign)]
    under_block = [Passage(c, UNDER, sign), Passage(dd, UNDER, -sign)]
    if order == "reversed":
        under_block.reverse()
    d = _Draft(code)
    if over_edge == under_edge:
        seq = d.pas[over_edge]
        if over_gap == under_gap:
            block = under_block + over_block if under_first else over_block + under_block
            seq[over_gap:over_gap] = block
        elif over_gap > under_gap:
            seq[over_gap:over_gap] = over_block
            seq[under_gap:under_gap] = under_block
        else:
            seq[under_gap:under_gap] = under_block
            seq[over_gap:over_gap] = over_block
    else:
        d.pas[over_edge][over_gap:over_gap] = over_block
        d.pas[under_edge][under_gap:under_gap] = under_block
    return d.freeze()


def _find_II(code: VsgCode, over_edge: str, over_index: int):
    """Return (under_edge, under_index) if a bigon starts at the over position."""
    seq = code.passages.get(over_edge, ())
    if not 0 <= over_index < len(seq) - 1:
        return None
    p, q = seq[over_index], seq[over_index + 1]
    if p.role != OVER or q.role != OVER or p.crossing == q.crossing or p.sign == q.sign:
        return None
    occ = code.occurrences()
    (ep, ip), = [o for o in occ[p.crossing] if o != (over_edge, over_index)]
    (eq, iq), = [o for o in occ[q.crossing] if o != (over_edge, over_index + 1)]
    if ep != eq or abs(ip - iq) != 1:
        return None
    return ep, min(ip, iq)


def _reduce_II(code, over_edge, over_index, under_edge, under_index):
    found = _find_II(code, over_edge, over_index)
    if found != (under_edge, under_index):
        raise MoveError("II: no bigon at this position")
    seq = code.passages[over_edge]
    labels = {seq[over_index].crossing, seq[over_index + 1].crossing}
    d = _Draft(code)
    d.delete_labels(labels)
    return d.freeze()


# -- move III ----------------------------------------------------------------------


def _triangle_ok(order_top: int, order_mid: int, order_bot: int, s_tm: int, s_tb: int, s_mb: int) -> bool:
    """Whether a triangle with these strand orders and signs is planar-realizable.

    order_top is +1 when the top strand meets its middle crossing before its
    bottom crossing, order_mid when the middle strand meets the top crossing
    first, order_bot when the bottom strand meets the top crossing first.
    """
    return order_bot * s_tb == order_mid * s_tm and order_top * s_tb == order_mid * s_mb


def _find_III(code: VsgCode, t_edge, t_index, m_edge, m_index, b_edge, b_index):
    """Validate a triangle given the first index of each of its three pairs."""
    pas = code.passages
    try:
        t = pas[t_edge][t_index : t_index + 2]
        m = pas[m_edge][m_index : m_index + 2]
        b = pas[b_edge][b_index : b_index + 2]
    except KeyError:
        return False
    if min(t_index, m_index, b_index) < 0 or len(t) < 2 or len(m) < 2 or len(b) < 2:
        return False
    if not all(p.role == OVER for p in t) or not all(p.role == UNDER for p in b):
        return False
    tl = {p.crossing for p in t}
    bl = {p.crossing for p in b}
    x_set = tl - bl
    y_set = tl & bl
    z_set = bl - tl
    if len(x_set) != 1 or len(y_set) != 1 or len(z_set) != 1:
        return False
    (x,), (y,), (z,) = x_set, y_set, z_set
    mlabels = [p.crossing for p in m]
    mroles = {p.crossing: p.role for p in m}
    if set(mlabels) != {x, z} or mroles[x] != UNDER or mroles[z] != OVER:
        return False
    sign = {p.crossing: p.sign for p in (*t, *m, *b)}
    o_t = 1 if t[0].crossing == x else -1
    o_m = 1 if m[0].crossing == x else -1
    o_b = 1 if b[0].crossing == y else -1
    return _triangle_ok(o_t, o_m, o_b, sign[x], sign[y], sign[z])


def _apply_III(code, t_edge, t_index, m_edge, m_index, b_edge, b_index):
    if not _find_III(code, t_edge, t_index, m_edge, m_index, b_edge, b_index):
        raise MoveError("III: no triangle at this position")
    d = _Draft(code)
    for e, i in ((t_edge, t_index), (m_edge, m_index), (b_edge, b_index)):
        s = d.pas[e]
        s[i], s[i + 1] = s[i + 1], s[i]
    return d.freeze()


def _enumerate_III(code: VsgCode) -> Iterator[MoveSite]:
    occ = code.occurrences()
    role_at = {}
    for label, places in occ.items():
        for e, i in places:
            role_at[(e, i)] = code.passages[e][i].role
    for x, places in occ.items():
        (e1, i1), (e2, i2) = places
        if code.passages[e1][i1].role == OVER:
            (te, ti), (me, mi) = (e1, i1), (e2, i2)
        else:
            (te, ti), (me, mi) = (e2, i2), (e1, i1)
        for t_first in (ti - 1, ti):
            for m_first in (mi - 1, mi):
                tseq = code.passages[te]
                mseq = code.passages[me]
                if not (0 <= t_first < len(tseq) - 1 and 0 <= m_first < len(mseq) - 1):
                    continue
                y = tseq[t_first + 1 if t_first == ti else t_first]
                z = mseq[m_first + 1 if m_first == mi else m_first]
                if y.role != OVER or z.role != OVER or y.crossing == z.crossing:
                    continue
                if x in (y.crossing, z.crossing):
                    continue
                (ye, yi), = [o for o in occ[y.crossing] if code.passages[o[0]][o[1]].role == UNDER]
                (ze, zi), = [o for o in occ[z.crossing] if code.passages[o[0]][o[1]].role == UNDER]
                if ye != ze or abs(yi - zi) != 1:
                    continue
                params = dict(t_edge=te, t_index=t_first, m_edge=me, m_index=m_first,
                              b_edge=ye, b_index=min(yi, zi))
                if _find_III(code, **params):
                    yield MoveSite.make("III", APPLY, **params)


# -- move IV -----------------------------------------------------------------------


def _iv_legs(code: VsgCode, vertex: str, cut: int, orient: str) -> list:
    rot = code.rotations[vertex]
    k = len(rot)
    step = 1 if orient == "ccw" else -1
    return [rot[(cut + step * a) % k] for a in range(k)]


def _iv_gap_legal(code: VsgCode, vertex: str, edge: str, gap: int) -> bool:
    e = code.edge(edge)
    n = len(code.passages[edge])
    if not 0 <= gap <= n:
        return False
    if e.tail == vertex and gap == 0:
        return False
    if e.head == vertex and gap == n:
        return False
    return True


def _insert_IV(code, vertex, cut, orient, role, edge, gap):
    if vertex not in code.rotations or orient not in ("cw", "ccw") or role not in (OVER, UNDER):
        raise MoveError("IV: bad parameters")
    k = len(code.rotations[vertex])
    if k == 0 or not 0 <= cut < k:
        raise MoveError("IV: cut out of range")
    if edge not in code.passages or not _iv_gap_legal(code, vertex, edge, gap):
        raise MoveError("IV: strand gap not allowed")
    legs = _iv_legs(code, vertex, cut, orient)
    labels = code.fresh_labels(k)
    rho = 1 if role == OVER else -1
    omega = 1 if orient == "cw" else -1
    d = _Draft(code)
    block = []
    partners = []
    for c, h in zip(labels, legs):
        s = _out_sign(h) * rho * omega
        block.append(Passage(c, role, s))
        partners.append((h, Passage(c, _other(role), s)))
    d.pas[edge][gap:gap] = block
    for h, p in partners:
        d.add_at_vertex_end(h, [p])
    return d.freeze()


def _iv_candidates(code: VsgCode, vertex: str):
    """Yield (edge, index, reduced code, strand gap) for potential IV bigons."""
    rot = code.rotations[vertex]
    k = len(rot)
    if k == 0:
        return
    adj = []
    for h in rot:
        idx = _vertex_adjacent_index(code, h)
        if idx is None:
            return
        adj.append((h[0], idx))
    if len(set(adj)) != k:
        return
    roles = {code.passages[e][i].role for e, i in adj}
    if len(roles) != 1:
        return
    labels = {code.passages[e][i].crossing for e, i in adj}
    if len(labels) != k:
        return
    occ = code.occurrences()
    others = []
    for e, i in adj:
        lab = code.passages[e][i].crossing
        (o,) = [p for p in occ[lab] if p != (e, i)]
        others.append(o)
    edges = {e for e, _ in others}
    if len(edges) != 1:
        return
    (s_edge,) = edges
    idxs = sorted(i for _, i in others)
    if idxs != list(range(idxs[0], idxs[0] + k)):
        return
    start = idxs[0]
    d = _Draft(code)
    d.delete_labels(labels)
    reduced = d.freeze()
    removed_before = sum(1 for e, i in adj if e == s_edge and i < start)
    yield s_edge, start, reduced, start - removed_before


def _iv_match(code: VsgCode, vertex: str, edge: str, index: int):
    for s_edge, start, reduced, gap in _iv_candidates(code, vertex):
        if (s_edge, start) != (edge, index):
            continue
        k = len(code.rotations[vertex])
        role = code.passages[edge][index].role
        for orient in ("ccw", "cw"):
            for cut in range(k):
                params = dict(vertex=vertex, cut=cut, orient=orient, role=role, edge=edge, gap=gap)
                try:
                    again = _insert_IV(reduced, **params)
                except MoveError:
                    continue
                if _same_up_to_labels(again, code):
                    return reduced
    return None


def _reduce_IV(code, vertex, edge, index):
    if vertex not in code.rotations:
        raise MoveError("IV: unknown vertex")
    reduced = _iv_match(code, vertex, edge, index)
    if reduced is None:
        raise MoveError("IV: no vertex slide at this position")
    return reduced


# -- move V ------------------------------------------------------------------------


def _insert_V(code, vertex, cut, twist):
    if vertex not in code.rotations or twist not in (1, -1):
        raise MoveError("V: bad parameters")
    rot = code.rotations[vertex]
    k = len(rot)
    if k < 2 or not 0 <= cut < k:
        raise MoveError("V: needs a vertex of degree >= 2 and a valid cut")
    legs = [rot[(cut + a) % k] for a in range(k)]
    labels = iter(code.fresh_labels(k * (k - 1) // 2))
    pair_label = {}
    for a in range(k):
        for b in range(a + 1, k):
            pair_label[(a, b)] = next(labels)
    d = _Draft(code)
    for a in range(k):
        outward = []
        for b in range(k):
            if b == a:
                continue
            lo, hi = min(a, b), max(a, b)
            over_leg = lo if twist == 1 else hi
            sign = twist * _out_sign(legs[lo]) * _out_sign(legs[hi])
            outward.append(Passage(pair_label[(lo, hi)], OVER if a == over_leg else UNDER, sign))
        d.add_at_vertex_end(legs[a], outward)
    d.rot[vertex] = list(reversed(legs))
    return d.freeze()


def _v_strip(code: VsgCode, vertex: str):
    """Remove k-1 vertex-adjacent passages on each leg and reverse the rotation."""
    rot = code.rotations[vertex]
    k = len(rot)
    if k < 2:
        return None
    d = _Draft(code)
    labels = set()
    for e, end in rot:
        seq = code.passages[e]
        need = k - 1
        # A loop contributes two legs on the same edge; they must not overlap.
        if len(seq) < need:
            return None
        part = seq[:need] if end == TAIL else seq[len(seq) - need :]
        labels.update(p.crossing for p in part)
    if len(labels) != k * (k - 1) // 2:
        return None
    d.delete_labels(labels)
    removed = sum(len(s) for s in code.passages.values()) - sum(len(s) for s in d.pas.values())
    if removed != k * (k - 1):
        return None
    d.rot[vertex] = list(reversed(rot))
    return d.freeze()


def _reduce_V(code, vertex, cut, twist):
    if vertex not in code.rotations:
        raise MoveError("V: unknown vertex")
    reduced = _v_strip(code, vertex)
    if reduced is None:
        raise MoveError("V: no twist at this vertex")
    try:
        again = _insert_V(reduced, vertex, cut, twist)
    except MoveError:
        raise MoveError("V: no twist at this vertex") from None
    if not _same_up_to_labels(again, code):
        raise MoveError("V: no twist with these parameters")
    return reduced


# -- move VI -----------------------------------------------------------------------


def _insert_VI(code, vertex, index, over):
    if vertex not in code.rotations or over not in ("first", "second"):
        raise MoveError("VI: bad parameters")
    rot = list(code.rotations[vertex])
    k = len(rot)
    if k < 2 or not 0 <= index < k:
        raise MoveError("VI: index out of range")
    j = (index + 1) % k
    x, y = rot[index], rot[j]
    (c,) = code.fresh_labels(1)
    sign = (1 if over == "first" else -1) * _out_sign(x) * _out_sign(y)
    d = _Draft(code)
    d.add_at_vertex_end(x, [Passage(c, OVER if over == "first" else UNDER, sign)])
    d.add_at_vertex_end(y, [Passage(c, UNDER if over == "first" else OVER, sign)])
    rot[index], rot[j] = rot[j], rot[index]
    d.rot[vertex] = rot
    return d.freeze()


def _reduce_VI(code, vertex, index):
    if vertex not in code.rotations:
        raise MoveError("VI: unknown vertex")
    rot = list(code.rotations[vertex])
    k = len(rot)
    if k < 2 or not 0 <= index < k:
        raise MoveError("VI: index out of range")
    j = (index + 1) % k
    p, q = rot[index], rot[j]
    ip, iq = _vertex_adjacent_index(code, p), _vertex_adjacent_index(code, q)
    if ip is None or iq is None or (p[0], ip) == (q[0], iq):
        raise MoveError("VI: no vertex-adjacent crossing")
    a, b = code.passages[p[0]][ip], code.passages[q[0]][iq]
    if a.crossing != b.crossing:
        raise MoveError("VI: legs do not cross next to the vertex")
    d = _Draft(code)
    d.delete_labels({a.crossing})
    rot[index], rot[j] = rot[j], rot[index]
    d.rot[vertex] = rot
    reduced = d.freeze()
    kk = len(reduced.rotations[vertex])
    for idx in range(kk):
        for over in ("first", "second"):
            if _same_up_to_labels(_insert_VI(reduced, vertex, idx, over), code):
                return reduced
    raise MoveError("VI: crossing has the wrong sign for a leg swap")


# -- forbidden moves -----------------------------------------------------------------


def _apply_VIs(code, vertex):
    if vertex not in code.rotations:
        raise MoveError("VI*: unknown vertex")
    d = _Draft(code)
    d.rot[vertex] = list(reversed(d.rot[vertex]))
    return d.freeze()


def _apply_VIIs(code, vertex, index):
    if vertex not in code.rotations:
        raise MoveError("VII*: unknown vertex")
    rot = list(code.rotations[vertex])
    k = len(rot)
    if k < 2 or not 0 <= index < k:
        raise MoveError("VII*: index out of range")
    j = (index + 1) % k
    rot[index], rot[j] = rot[j], rot[index]
    d = _Draft(code)
    d.rot[vertex] = rot
    return d.freeze()


def _apply_VIIIs(code, edge, index):
    seq = code.passages.get(edge)
    if seq is None or not 0 <= index < len(seq) - 1:
        raise MoveError("VIII*: index out of range")
    d = _Draft(code)
    s = d.pas[edge]
    s[index], s[index + 1] = s[index + 1], s[index]
    return d.freeze()


# -- public API ----------------------------------------------------------------------

_DISPATCH = {
    ("I", APPLY): _insert_I,
    ("I", INVERSE): _reduce_I,
    ("II", APPLY): _insert_II,
    ("II", INVERSE): _reduce_II,
    ("III", APPLY): _apply_III,
    ("IV", APPLY): _insert_IV,
    ("IV", INVERSE): _reduce_IV,
    ("V", APPLY): _insert_V,
    ("V", INVERSE): _reduce_V,
    ("VI", APPLY): _insert_VI,
    ("VI", INVERSE): _reduce_VI,
    ("VI*", APPLY): _apply_VIs,
    ("VII*", APPLY): _apply_VIIs,
    ("VIII*", APPLY): _apply_VIIIs,
}


def apply_move(code: VsgCode, site: MoveSite, allow: Iterable[str] = ALL_MOVES) -> VsgCode:
    """Rewrite ``code`` at ``site``.

    ``allow`` lists the forbidden moves that may be used; classical moves are
    always permitted.
    """
    if site.move in FORBIDDEN_MOVES and site.move not in set(allow):
        raise PolicyError(f"forbidden move {site.move} is not allowed")
    fn = _DISPATCH.get((site.move, site.direction))
    if fn is None:
        raise MoveError(f"no such move: {site.move}/{site.direction}")
    try:
        return fn(code, **dict(site.params))
    except TypeError as exc:
        raise MoveError(f"bad parameters for {site}: {exc}") from None


def reduction_sites(code: VsgCode, moves: Iterable[str] = PLIABLE) -> list[MoveSite]:
    """Sites that delete crossings (and the self-inverse moves)."""
    moves = set(moves)
    out: list[MoveSite] = []
    pas = code.passages
    if "I" in moves:
        for e in code.edge_ids():
            seq = pas[e]
            for i in range(len(seq) - 1):
                if seq[i].crossing == seq[i + 1].crossing:
                    out.append(MoveSite.make("I", INVERSE, edge=e, index=i))
    if "II" in moves:
        for e in code.edge_ids():
            for i in range(len(pas[e]) - 1):
                found = _find_II(code, e, i)
                if found:
                    out.append(MoveSite.make("II", INVERSE, over_edge=e, over_index=i,
                                             under_edge=found[0], under_index=found[1]))
    if "III" in moves:
        out.extend(_enumerate_III(code))
    if "IV" in moves:
        for v in code.vertices:
            for s_edge, start, _, _ in _iv_candidates(code, v):
                if _iv_match(code, v, s_edge, start) is not None:
                    out.append(MoveSite.make("IV", INVERSE, vertex=v, edge=s_edge, index=start))
    if "V" in moves:
        for v in code.vertices:
            reduced = _v_strip(code, v)
            if reduced is None:
                continue
            k = len(code.rotations[v])
            for cut in range(k):
                for twist in (1, -1):
                    if _same_up_to_labels(_insert_V(reduced, v, cut, twist), code):
                        out.append(MoveSite.make("V", INVERSE, vertex=v, cut=cut, twist=twist))
    if "VI" in moves:
        for v in code.vertices:
            for idx in range(len(code.rotations[v])):
                try:
                    _reduce_VI(code, v, idx)
                except MoveError:
                    continue
                out.append(MoveSite.make("VI", INVERSE, vertex=v, index=idx))
    if "VI*" in moves:
        for v in code.vertices:
            if len(code.rotations[v]) >= 3:
                out.append(MoveSite.make("VI*", APPLY, vertex=v))
    if "VII*" in moves:
        for v in code.vertices:
            k = len(code.rotations[v])
            if k >= 3:
                for idx in range(k):
                    out.append(MoveSite.make("VII*", APPLY, vertex=v, index=idx))
    if "VIII*" in moves:
        for e in code.edge_ids():
            for i in range(len(pas[e]) - 1):
                out.append(MoveSite.make("VIII*", APPLY, edge=e, index=i))
    return out


def insertion_sites(code: VsgCode, moves: Iterable[str] = PLIABLE,
                    max_increase: int | None = None) -> list[MoveSite]:
    """Finite generator set of crossing-creating sites: every gap, every parameter.

    ``max_increase`` drops sites that would add more crossings than that.
    """
    moves = set(moves)
    if max_increase is not None:
        room = max_increase
        moves = {m for m in moves if m not in ("I", "VI") or room >= 1}
        if room < 2:
            moves.discard("II")
        moves_iv = {v for v in code.vertices if code.degree(v) <= room}
        moves_v = {v for v in code.vertices if code.degree(v) * (code.degree(v) - 1) // 2 <= room}
    else:
        moves_iv = moves_v = set(code.vertices)
    out: list[MoveSite] = []
    gaps = [(e, g) for e in code.edge_ids() for g in range(len(code.passages[e]) + 1)]
    if "I" in moves:
        for e, g in gaps:
            for first in (OVER, UNDER):
                for sign in (1, -1):
                    out.append(MoveSite.make("I", APPLY, edge=e, gap=g, first=first, sign=sign))
    if "II" in moves:
        for oe, og in gaps:
            for ue, ug in gaps:
                flags = (0, 1) if (oe, og) == (ue, ug) else (0,)
                for order in ("same", "reversed"):
                    for sign in (1, -1):
                        for uf in flags:
                            out.append(MoveSite.make(
                                "II", APPLY, over_edge=oe, over_gap=og, under_edge=ue,
                                under_gap=ug, order=order, sign=sign, under_first=uf))
    if "IV" in moves:
        for v in code.vertices:
            if v not in moves_iv:
                continue
            k = len(code.rotations[v])
            for e, g in gaps:
                if not _iv_gap_legal(code, v, e, g):
                    continue
                for cut in range(k):
                    for orient in ("ccw", "cw"):
                        for role in (OVER, UNDER):
                            out.append(MoveSite.make("IV", APPLY, vertex=v, cut=cut, orient=orient,
                                                     role=role, edge=e, gap=g))
    if "V" in moves:
        for v in code.vertices:
            k = len(code.rotations[v])
            if k >= 2 and v in moves_v:
                for cut in range(k):
                    for twist in (1, -1):
                        out.append(MoveSite.make("V", APPLY, vertex=v, cut=cut, twist=twist))
    if "VI" in moves:
        for v in code.vertices:
            k = len(code.rotations[v])
            if k >= 2:
                for idx in range(k):
                    for over in ("first", "second"):
                        out.append(MoveSite.make("VI", APPLY, vertex=v, index=idx, over=over))
    return out


def crossing_increase(code: VsgCode, site: MoveSite) -> int:
    """Crossings an insertion adds (0 for moves that delete or keep them)."""
    if site.direction != APPLY:
        return 0
    if site.move in ("I", "VI"):
        return 1
    if site.move == "II":
        return 2
    if site.move == "IV":
        return code.degree(site["vertex"])
    if site.move == "V":
        k = code.degree(site["vertex"])
        return k * (k - 1) // 2
    return 0


def enumerate_moves(code: VsgCode, moves: Iterable[str] = PLIABLE, insertions: bool = True,
                    max_increase: int | None = None) -> list[MoveSite]:
    """All reduction sites plus (optionally) the finite insertion generator set.

    Virtual moves never appear: they do not change a code.
    """
    require_valid(code)
    moves = frozenset(moves)
    sites = reduction_sites(code, moves)
    if insertions:
        sites += insertion_sites(code, moves, max_increase)
    return sites


def inverse_site(code: VsgCode, site: MoveSite) -> MoveSite:
    """A site on ``apply_move(code, site)`` that leads back to ``code`` (up to labels)."""
    after = apply_move(code, site)
    if site.move in SELF_INVERSE:
        candidate = site
        if _same_up_to_labels(apply_move(after, candidate), code):
            return candidate
    target = canonical_key(code)
    pool = enumerate_moves(after, set(ALL_MOVES), insertions=site.direction == INVERSE)
    fallback = None
    for s in pool:
        if s.move != site.move:
            continue
        try:
            back = apply_move(after, s)
        except MoveError:
            continue
        # Prefer undoing exactly the crossings just made over an equivalent site.
        if back == code:
            return s
        if fallback is None and canonical_key(back) == target:
            fallback = s
    if fallback is not None:
        return fallback
    raise MoveError(f"no inverse found for {site}")


def replay(code: VsgCode, sites: Iterable[MoveSite], allow: Iterable[str] = ALL_MOVES) -> VsgCode:
    for s in sites:
        code = apply_move(code, s, allow)
    return code
