"""Normal forms modulo the forbidden moves.

Everything here is done by honest moves, so the returned witness replays from
the input to the output:

* level ``viii`` (rigid moves plus VIII*): self-arrows are slid together and
  removed by (I), opposite-sign arrows between the same edges are slid
  together and cancelled by (II), and finally the passages on every edge are
  sorted so each arrow set is one block.
* level ``pliable`` (all moves): additionally, the two legs of any arrow between
  adjacent edges are made neighbours by VII*, its passages are slid to the
  vertex by VIII*, and (VI) removes it. Rotations end in sorted order.
"""

from __future__ import annotations

from vsg.code import HEAD, OVER, TAIL, UNDER, VsgCode, arrow_sets, require_valid
from vsg.moves import APPLY, INVERSE, MoveError, MoveSite, apply_move

LEVELS = ("viii", "pliable")


class NormalFormError(AssertionError):
    """A postcondition of the normal form does not hold."""


class _Run:
    def __init__(self, code: VsgCode):
        self.code = code
        self.sites: list[MoveSite] = []

    def do(self, site: MoveSite) -> None:
        self.code = apply_move(self.code, site)
        self.sites.append(site)

    def position(self, label: str, role: str) -> tuple[str, int]:
        for e, seq in self.code.passages.items():
            for i, p in enumerate(seq):
                if p.crossing == label and p.role == role:
                    return e, i
        raise KeyError(label)

    def slide(self, edge: str, src: int, dst: int) -> None:
        """Move the passage at ``src`` to ``dst`` on one edge by adjacent swaps."""
        while src < dst:
            self.do(MoveSite.make("VIII*", APPLY, edge=edge, index=src))
            src += 1
        while src > dst:
            self.do(MoveSite.make("VIII*", APPLY, edge=edge, index=src - 1))
            src -= 1


def _remove_self_arrows(run: _Run) -> bool:
    for e in run.code.edge_ids():
        seq = run.code.passages[e]
        first: dict[str, int] = {}
        for i, p in enumerate(seq):
            if p.crossing in first:
                j = first[p.crossing]
                run.slide(e, i, j + 1)
                run.do(MoveSite.make("I", INVERSE, edge=e, index=j))
                return True
            first[p.crossing] = i
    return False


def _cancel_pair(run: _Run) -> bool:
    for (i, j), arrows in sorted(arrow_sets(run.code).items()):
        pos = [a for a in arrows if a.sign > 0]
        neg = [a for a in arrows if a.sign < 0]
        if i == j or not pos or not neg:
            continue
        c, d = pos[0].label, neg[0].label
        _, oc = run.position(c, OVER)
        _, od = run.position(d, OVER)
        if od < oc:
            run.slide(j, od, oc - 1)
        else:
            run.slide(j, od, oc + 1)
        _, uc = run.position(c, UNDER)
        _, ud = run.position(d, UNDER)
        if ud < uc:
            run.slide(i, ud, uc - 1)
        else:
            run.slide(i, ud, uc + 1)
        _, oc = run.position(c, OVER)
        _, od = run.position(d, OVER)
        _, uc = run.position(c, UNDER)
        _, ud = run.position(d, UNDER)
        run.do(MoveSite.make("II", INVERSE, over_edge=j, over_index=min(oc, od),
                             under_edge=i, under_index=min(uc, ud)))
        return True
    return False


def _group_blocks(run: _Run) -> None:
    """Sort each edge so every arrow set is contiguous, in a matching order."""
    order = {e: k for k, e in enumerate(run.code.edge_ids())}
    home: dict[str, dict[str, str]] = {}
    for e, seq in run.code.passages.items():
        for p in seq:
            home.setdefault(p.crossing, {})[p.role] = e
    # A crossing's rank inside its block follows its position on the over edge.
    over_rank = {}
    for e, seq in run.code.passages.items():
        for i, p in enumerate(seq):
            if p.role == OVER:
                over_rank[p.crossing] = i
    for e in run.code.edge_ids():
        def key(p):
            partner = home[p.crossing][UNDER if p.role == OVER else OVER]
            return (order[partner], p.role, over_rank[p.crossing])
        # Selection sort by adjacent swaps keeps the witness explicit.
        n = len(run.code.passages[e])
        for target in range(n):
            seq = run.code.passages[e]
            best = min(range(target, n), key=lambda k: key(seq[k]))
            run.slide(e, best, target)


def _adjacent_legs(code: VsgCode, i: str, j: str):
    """A vertex shared by edges i and j with one leg of each there."""
    for v in code.vertices:
        rot = code.rotations[v]
        legs_i = [h for h in rot if h[0] == i]
        legs_j = [h for h in rot if h[0] == j]
        if legs_i and legs_j:
            return v, legs_i[0], legs_j[0]
    return None


def _vertex_end_index(code: VsgCode, half_edge) -> int:
    e, end = half_edge
    return 0 if end == TAIL else len(code.passages[e]) - 1


def _remove_adjacent_arrow(run: _Run) -> bool:
    for (i, j), arrows in sorted(arrow_sets(run.code).items()):
        if i == j or not arrows:
            continue
        found = _adjacent_legs(run.code, i, j)
        if found is None:
            continue
        v, leg_i, leg_j = found
        label = arrows[0].label
        # Slide both passages of the crossing to the vertex ends of the legs.
        e, k = run.position(label, UNDER)
        run.slide(e, k, _vertex_end_index(run.code, leg_i))
        e, k = run.position(label, OVER)
        run.slide(e, k, _vertex_end_index(run.code, leg_j))
        for first, second in ((leg_i, leg_j), (leg_j, leg_i)):
            _make_neighbours(run, v, first, second)
            rot = run.code.rotations[v]
            idx = rot.index(first)
            try:
                run.do(MoveSite.make("VI", INVERSE, vertex=v, index=idx))
                return True
            except MoveError:
                continue
        raise NormalFormError(f"could not remove crossing {label} at vertex {v}")
    return False


def _make_neighbours(run: _Run, v: str, first, second) -> None:
    """Use VII* until ``second`` directly follows ``first`` in the rotation."""
    while True:
        rot = run.code.rotations[v]
        k = len(rot)
        a, b = rot.index(first), rot.index(second)
        if (a + 1) % k == b:
            return
        # Swap ``second`` one step backwards towards ``first``.
        run.do(MoveSite.make("VII*", APPLY, vertex=v, index=(b - 1) % k))


def _sort_rotations(run: _Run) -> None:
    for v in run.code.vertices:
        target = sorted(run.code.rotations[v])
        for pos in range(1, len(target)):
            _make_neighbours(run, v, target[pos - 1], target[pos])


def normalize_forbidden_with_witness(code: VsgCode, level: str = "viii") -> tuple[VsgCode, list[MoveSite]]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    require_valid(code)
    run = _Run(code)
    while _remove_self_arrows(run):
        pass
    if level == "pliable":
        while _remove_adjacent_arrow(run):
            while _remove_self_arrows(run):
                pass
    while _cancel_pair(run):
        pass
    _group_blocks(run)
    if level == "pliable":
        _sort_rotations(run)
    check_normal_form(run.code, level)
    return run.code, run.sites


def normalize_forbidden(code: VsgCode, level: str = "viii") -> VsgCode:
    return normalize_forbidden_with_witness(code, level)[0]


def _contiguous(positions: list[int]) -> bool:
    return not positions or max(positions) - min(positions) + 1 == len(positions)


def normal_form_violations(code: VsgCode, level: str = "viii") -> list[str]:
    """Postconditions that fail, described in words; empty when the form is normal."""
    bad = []
    arrows = arrow_sets(code)
    where: dict[tuple[str, str], int] = {}
    for e, seq in code.passages.items():
        for i, p in enumerate(seq):
            where[(p.crossing, p.role)] = i
    for (i, j), arr in arrows.items():
        if not arr:
            continue
        if i == j:
            bad.append(f"A[{i},{i}] is not empty")
            continue
        if len({a.sign for a in arr}) > 1:
            bad.append(f"A[{i},{j}] mixes signs")
        if not _contiguous([where[(a.label, UNDER)] for a in arr]):
            bad.append(f"A[{i},{j}] is not consecutive on {i}")
        if not _contiguous([where[(a.label, OVER)] for a in arr]):
            bad.append(f"A[{i},{j}] is not consecutive on {j}")
        if level == "pliable" and _adjacent_legs(code, i, j) is not None:
            bad.append(f"A[{i},{j}] is not empty though {i} and {j} are adjacent")
    if level == "pliable":
        for v in code.vertices:
            rot = code.rotations[v]
            if list(rot) != sorted(rot):
                bad.append(f"rotation at {v} is not sorted")
    return bad


def check_normal_form(code: VsgCode, level: str = "viii") -> None:
    bad = normal_form_violations(code, level)
    if bad:
        raise NormalFormError("; ".join(bad))
