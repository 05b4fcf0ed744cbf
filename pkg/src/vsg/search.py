"""Budgeted bidirectional breadth-first search for move equivalence.

A verdict of ``exhausted`` only means nothing was found within the budget.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from vsg.code import VsgCode, canonical_form, canonical_key, require_valid
from vsg.moves import PLIABLE, crossing_increase, MoveError, MoveSite, apply_move, enumerate_moves, inverse_site, replay

EQUIVALENT = "equivalent"
EXHAUSTED = "exhausted"


class BudgetConfigError(ValueError):
    """Budgets are smaller than the inputs themselves."""


@dataclass(frozen=True)
class SearchConfig:
    max_crossings: int = 6
    max_states: int = 20_000
    moves: frozenset = PLIABLE
    workers: int = 1


@dataclass
class SearchStats:
    states: int = 0
    max_crossings_reached: int = 0
    depth_a: int = 0
    depth_b: int = 0


@dataclass
class SearchVerdict:
    outcome: str
    witness: list[MoveSite] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "witness": [s.to_json() for s in self.witness],
            "stats": {"states": self.stats.states,
                      "max_crossings_reached": self.stats.max_crossings_reached,
                      "depth_a": self.stats.depth_a, "depth_b": self.stats.depth_b},
        }


def _children(args) -> list[tuple[bytes, MoveSite, VsgCode]]:
    code, moves, max_crossings = args
    out = []
    room = max_crossings - code.crossing_count()
    for site in enumerate_moves(code, moves, max_increase=room):
        if crossing_increase(code, site) > room:
            continue
        try:
            nxt = apply_move(code, site, moves)
        except MoveError:
            continue
        if nxt.crossing_count() > max_crossings:
            continue
        nxt = canonical_form(nxt)
        out.append((canonical_key(nxt), site, nxt))
    return out


class _Side:
    def __init__(self, code: VsgCode):
        code = canonical_form(code)
        key = canonical_key(code)
        self.code_of = {key: code}
        self.parent: dict[bytes, tuple[bytes, MoveSite] | None] = {key: None}
        self.frontier = [key]
        self.depth = 0

    def path(self, key: bytes) -> list[tuple[VsgCode, MoveSite]]:
        """(code, site) steps from the root to ``key``."""
        steps = []
        while self.parent[key] is not None:
            prev, site = self.parent[key]
            steps.append((self.code_of[prev], site))
            key = prev
        return steps[::-1]


def search_equivalent(a: VsgCode, b: VsgCode, config: SearchConfig = SearchConfig(),
                      allow: Iterable[str] = ()) -> SearchVerdict:
    require_valid(a)
    require_valid(b)
    moves = frozenset(config.moves) | frozenset(allow)
    if config.max_crossings < max(a.crossing_count(), b.crossing_count()):
        raise BudgetConfigError("max crossings is below the size of an input")
    if config.max_states < 2:
        raise BudgetConfigError("max states must be at least 2")
    stats = SearchStats(max_crossings_reached=max(a.crossing_count(), b.crossing_count()))
    sa, sb = _Side(a), _Side(b)
    stats.states = len(set(sa.parent) | set(sb.parent))
    meet = next((k for k in sa.parent if k in sb.parent), None)
    pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        while meet is None:
            if not sa.frontier and not sb.frontier:
                break
            # Expand the smaller non-empty frontier; ties go to a.
            side, other = (sa, sb)
            if not sa.frontier or (sb.frontier and len(sb.frontier) < len(sa.frontier)):
                side, other = sb, sa
            jobs = [(side.code_of[k], moves, config.max_crossings) for k in sorted(side.frontier)]
            results = pool.map(_children, jobs, chunksize=8) if pool else map(_children, jobs)
            nxt = []
            over_budget = False
            for parent_key, kids in zip(sorted(side.frontier), results):
                for key, site, code in kids:
                    if key in side.parent:
                        continue
                    side.parent[key] = (parent_key, site)
                    side.code_of[key] = code
                    nxt.append(key)
                    stats.max_crossings_reached = max(stats.max_crossings_reached, code.crossing_count())
                    if key not in other.parent:
                        stats.states += 1
                    elif meet is None:
                        meet = key
                    if stats.states >= config.max_states:
                        over_budget = True
                        break
                if meet is not None or over_budget:
                    break
            side.frontier = nxt
            side.depth += 1
            if meet is None and over_budget:
                break
    finally:
        if pool:
            pool.shutdown()
    stats.depth_a, stats.depth_b = sa.depth, sb.depth
    if meet is None:
        return SearchVerdict(EXHAUSTED, [], stats)
    witness = [site for _, site in sa.path(meet)]
    # Walk back from the meeting point to b by inverting b's steps.
    for code, site in reversed(sb.path(meet)):
        witness.append(inverse_site(code, site))
    verdict = SearchVerdict(EQUIVALENT, witness, stats)
    if not verify_witness(a, b, witness, moves):
        raise AssertionError("search produced a witness that does not replay")
    return verdict


def verify_witness(a: VsgCode, b: VsgCode, witness: Iterable[MoveSite], allow=None) -> bool:
    from vsg.moves import ALL_MOVES
    try:
        end = replay(a, witness, ALL_MOVES if allow is None else allow)
    except MoveError:
        return False
    return canonical_key(end) == canonical_key(b)
