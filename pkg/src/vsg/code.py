"""The Gauss-code datum for virtual spatial graphs.

A code is a directed multigraph together with, for every edge, the sequence of
classical crossing passages met when walking from tail to head, and for every
vertex the counterclockwise cyclic order of its incident half-edges.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, NamedTuple

OVER = "o"
UNDER = "u"
TAIL = "tail"
HEAD = "head"
FORMAT_VERSION = 1


class FormatError(ValueError):
    """Input text does not follow the code JSON layout."""


class ValidationError(ValueError):
    """A code violates one of the datum invariants."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        lines = "; ".join(f"{v.rule}: {v.location}" for v in report.violations)
        super().__init__(f"invalid code ({lines})")


class Edge(NamedTuple):
    id: str
    tail: str
    head: str


class Passage(NamedTuple):
    crossing: str
    role: str  # OVER or UNDER
    sign: int  # +1 or -1

    def flipped(self) -> "Passage":
        return Passage(self.crossing, UNDER if self.role == OVER else OVER, self.sign)


HalfEdge = tuple[str, str]  # (edge id, TAIL | HEAD)


def min_rotation(seq: Iterable) -> tuple:
    """Cyclic shift of ``seq`` that is lexicographically smallest."""
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def same_cycle(a: Iterable, b: Iterable) -> bool:
    return min_rotation(a) == min_rotation(b)


@dataclass(frozen=True)
class VsgCode:
    """Immutable virtual spatial graph code.

    Rotations are anchored at their lexicographically smallest cyclic shift on
    construction, so structural equality already compares them up to rotation.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    rotations: Mapping[str, tuple[HalfEdge, ...]]
    passages: Mapping[str, tuple[Passage, ...]]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _labels: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges", tuple(e if type(e) is Edge else Edge(*e) for e in self.edges)
        )
        object.__setattr__(
            self,
            "rotations",
            {v: min_rotation(tuple(h) for h in rot) for v, rot in self.rotations.items()},
        )
        object.__setattr__(
            self,
            "passages",
            {
                e: tuple(p if type(p) is Passage else Passage(*p) for p in seq)
                for e, seq in self.passages.items()
            },
        )

    def __hash__(self):
        return hash(canonical_serialize(self))

    # -- derived views -----------------------------------------------------
    def edge(self, edge_id: str) -> Edge:
        return self._edge_map()[edge_id]

    def _edge_map(self) -> dict[str, Edge]:
        if self._index is None:
            object.__setattr__(self, "_index", {e.id: e for e in self.edges})
        return self._index

    def edge_ids(self) -> list[str]:
        return [e.id for e in self.edges]

    def labels(self) -> list[str]:
        """Crossing labels in order of first occurrence."""
        if self._labels is None:
            seen: dict[str, None] = {}
            for e in self.edges:
                for p in self.passages.get(e.id, ()):
                    seen.setdefault(p.crossing, None)
            object.__setattr__(self, "_labels", tuple(seen))
        return list(self._labels)

    def crossing_count(self) -> int:
        if self._labels is None:
            self.labels()
        return len(self._labels)

    def occurrences(self) -> dict[str, list[tuple[str, int]]]:
        """label -> [(edge id, index)] in traversal order."""
        occ: dict[str, list[tuple[str, int]]] = defaultdict(list)
        for e in self.edges:
            for i, p in enumerate(self.passages.get(e.id, ())):
                occ[p.crossing].append((e.id, i))
        return dict(occ)

    def half_edges(self, vertex: str) -> list[HalfEdge]:
        out = []
        for e in self.edges:
            if e.tail == vertex:
                out.append((e.id, TAIL))
            if e.head == vertex:
                out.append((e.id, HEAD))
        return out

    def degree(self, vertex: str) -> int:
        return len(self.half_edges(vertex))

    def with_changes(self, rotations=None, passages=None) -> "VsgCode":
        rot = dict(self.rotations)
        if rotations:
            rot.update(rotations)
        pas = dict(self.passages)
        if passages:
            pas.update(passages)
        return replace(self, rotations=rot, passages=pas)

    def fresh_labels(self, n: int) -> list[str]:
        used = set(self.labels())
        out, k = [], 1
        while len(out) < n:
            name = f"c{k}"
            if name not in used:
                out.append(name)
            k += 1
        return out


# -- validation --------------------------------------------------------------


class Violation(NamedTuple):
    rule: str
    location: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"rule": v.rule, "location": v.location} for v in self.violations],
        }


def validate(code: VsgCode) -> ValidationReport:
    bad: list[Violation] = []
    vset = set(code.vertices)
    for v, n in Counter(code.vertices).items():
        if n > 1:
            bad.append(Violation("duplicate-vertex", v))
    eids = [e.id for e in code.edges]
    for e, n in Counter(eids).items():
        if n > 1:
            bad.append(Violation("duplicate-edge", e))
    for e in code.edges:
        for end, v in ((TAIL, e.tail), (HEAD, e.head)):
            if v not in vset:
                bad.append(Violation("unknown-vertex", f"edge {e.id} {end} -> {v}"))
        if e.id not in code.passages:
            bad.append(Violation("missing-passages", f"edge {e.id}"))
    for e in code.passages:
        if e not in set(eids):
            bad.append(Violation("foreign-passages", f"edge {e}"))

    seen: dict[str, list[tuple[str, int, Passage]]] = defaultdict(list)
    for e in code.edges:
        for i, p in enumerate(code.passages.get(e.id, ())):
            if p.role not in (OVER, UNDER):
                bad.append(Violation("bad-role", f"edge {e.id}[{i}]"))
            if p.sign not in (1, -1):
                bad.append(Violation("bad-sign", f"edge {e.id}[{i}]"))
            seen[p.crossing].append((e.id, i, p))
    for label, occ in seen.items():
        where = ", ".join(f"{e}[{i}]" for e, i, _ in occ)
        if len(occ) != 2:
            bad.append(Violation("unpaired-crossing", f"{label} occurs {len(occ)}x at {where}"))
            continue
        (_, _, p), (_, _, q) = occ
        if p.sign != q.sign:
            bad.append(Violation("sign-mismatch", f"{label} at {where}"))
        if p.role == q.role:
            bad.append(Violation("role-mismatch", f"{label} at {where}"))

    for v in code.rotations:
        if v not in vset:
            bad.append(Violation("rotation-unknown-vertex", v))
    for v in code.vertices:
        if v not in code.rotations:
            bad.append(Violation("rotation-missing", f"vertex {v}"))
            continue
        expected = Counter(code.half_edges(v))
        got = Counter(code.rotations[v])
        for h, n in got.items():
            if h not in expected:
                bad.append(Violation("rotation-foreign", f"vertex {v}: {h[0]}.{h[1]}"))
            elif n > 1:
                bad.append(Violation("rotation-duplicate", f"vertex {v}: {h[0]}.{h[1]}"))
        for h in expected:
            if h not in got:
                bad.append(Violation("rotation-missing-half-edge", f"vertex {v}: {h[0]}.{h[1]}"))
    return ValidationReport(tuple(bad))


def require_valid(code: VsgCode) -> VsgCode:
    report = validate(code)
    if not report.ok:
        raise ValidationError(report)
    return code


# -- serialization -----------------------------------------------------------


def to_json(code: VsgCode) -> dict:
    return {
        "version": FORMAT_VERSION,
        "vertices": list(code.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in code.edges],
        "rotations": {v: [list(h) for h in rot] for v, rot in code.rotations.items()},
        "passages": {
            e: [{"x": p.crossing, "role": p.role, "sign": "+" if p.sign > 0 else "-"} for p in seq]
            for e, seq in code.passages.items()
        },
    }


def canonical_serialize(code: VsgCode) -> bytes:
    """Key-sorted, whitespace-free single-line JSON encoding."""
    return json.dumps(
        to_json(code), sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise FormatError(msg)


def from_json(doc) -> VsgCode:
    _expect(isinstance(doc, dict), "top level must be an object")
    _expect(doc.get("version") == FORMAT_VERSION, f"unsupported version {doc.get('version')!r}")
    for key in ("vertices", "edges", "rotations", "passages"):
        _expect(key in doc, f"missing key {key!r}")
    _expect(isinstance(doc["vertices"], list), "vertices must be an array")
    vertices = [str(v) for v in doc["vertices"]]
    edges = []
    for e in doc["edges"]:
        _expect(isinstance(e, dict) and {"id", "tail", "head"} <= set(e), f"bad edge {e!r}")
        edges.append(Edge(str(e["id"]), str(e["tail"]), str(e["head"])))
    rotations = {}
    _expect(isinstance(doc["rotations"], dict), "rotations must be an object")
    for v, rot in doc["rotations"].items():
        hs = []
        for h in rot:
            _expect(isinstance(h, list) and len(h) == 2 and h[1] in (TAIL, HEAD), f"bad half-edge {h!r}")
            hs.append((str(h[0]), h[1]))
        rotations[str(v)] = tuple(hs)
    passages = {}
    _expect(isinstance(doc["passages"], dict), "passages must be an object")
    for e, seq in doc["passages"].items():
        ps = []
        for p in seq:
            _expect(isinstance(p, dict) and {"x", "role", "sign"} <= set(p), f"bad passage {p!r}")
            _expect(p["role"] in (OVER, UNDER), f"bad role {p['role']!r}")
            _expect(p["sign"] in ("+", "-"), f"bad sign {p['sign']!r}")
            ps.append(Passage(str(p["x"]), p["role"], 1 if p["sign"] == "+" else -1))
        passages[str(e)] = tuple(ps)
    return VsgCode(tuple(vertices), tuple(edges), rotations, passages)


def parse_code(text: str | bytes) -> VsgCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON: {exc}") from exc
    return from_json(doc)


def load_code(path) -> VsgCode:
    with open(path, "rb") as fh:
        return parse_code(fh.read())


# -- derived codes -----------------------------------------------------------


def relabel(code: VsgCode, mapping: Mapping[str, str]) -> VsgCode:
    return code.with_changes(
        passages={
            e: tuple(Passage(mapping[p.crossing], p.role, p.sign) for p in seq)
            for e, seq in code.passages.items()
        }
    )


def canonical_form(code: VsgCode) -> VsgCode:
    """Rename crossings c1, c2, ... by first occurrence along the edge list."""
    mapping = {x: f"c{i}" for i, x in enumerate(code.labels(), 1)}
    return relabel(code, mapping)


def canonical_key(code: VsgCode) -> bytes:
    return canonical_serialize(canonical_form(code))


@dataclass(frozen=True)
class ShadowCode:
    """A code with over/under and sign information forgotten."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    rotations: Mapping[str, tuple[HalfEdge, ...]]
    passages: Mapping[str, tuple[str, ...]]


def shadow(code: VsgCode | ShadowCode) -> ShadowCode:
    if isinstance(code, ShadowCode):
        return code
    return ShadowCode(
        code.vertices,
        code.edges,
        dict(code.rotations),
        {e: tuple(p.crossing for p in seq) for e, seq in code.passages.items()},
    )


class Arrow(NamedTuple):
    label: str
    sign: int


def arrow_sets(code: VsgCode) -> dict[tuple[str, str], list[Arrow]]:
    """Arrows from the under-passage edge to the over-passage edge, per edge pair."""
    ids = code.edge_ids()
    out: dict[tuple[str, str], list[Arrow]] = {(i, j): [] for i in ids for j in ids}
    under: dict[str, str] = {}
    over: dict[str, str] = {}
    sign: dict[str, int] = {}
    for e in code.edges:
        for p in code.passages.get(e.id, ()):
            (over if p.role == OVER else under)[p.crossing] = e.id
            sign[p.crossing] = p.sign
    for label in code.labels():
        out[(under[label], over[label])].append(Arrow(label, sign[label]))
    return out
