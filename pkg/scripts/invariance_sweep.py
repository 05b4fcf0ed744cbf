"""Random walks under a move set; report whether each invariant stayed put.

    python3 scripts/invariance_sweep.py --walks 50 --steps 6 --moves I II III IV V VI
"""

import argparse
import random
import time
from dataclasses import dataclass, field

from vsg import generate as gen
from vsg.group import abelianization, count_homs, symmetric_group, tietze_simplify, wirtinger
from vsg.links import tg_invariants
from vsg.moves import CLASSICAL_MOVES
from vsg.quandle import count_colorings, dihedral_structure, gcd_valence
from vsg.yamada import yamada_normalized


@dataclass
class SweepConfig:
    walks: int = 30
    steps: int = 5
    max_crossings: int = 6
    moves: tuple[str, ...] = CLASSICAL_MOVES
    seed: int = 0


def _invariants(code):
    p = tietze_simplify(wirtinger(code))
    out = {
        "yamada": yamada_normalized(code, strict=False),
        "group": (abelianization(p), count_homs(p, symmetric_group(3))),
        "tg": tg_invariants(code),
    }
    if code.vertices and gcd_valence(code) % 2 == 0:
        out["colorings"] = count_colorings(code, dihedral_structure())
    return out


def main(cfg: SweepConfig) -> None:
    rng = random.Random(cfg.seed)
    changed: dict[str, int] = {}
    start = time.perf_counter()
    for _ in range(cfg.walks):
        code = gen.random_code(rng, max_vertices=2, max_crossings=3)
        walk, _ = gen.random_walk(rng, code, cfg.moves, cfg.steps, cfg.max_crossings)
        before, after = _invariants(code), _invariants(walk)
        for k in before:
            changed.setdefault(k, 0)
            changed[k] += before[k] != after[k]
    print(f"moves {' '.join(cfg.moves)}: {cfg.walks} walks of {cfg.steps} steps "
          f"in {time.perf_counter() - start:.1f}s")
    for k, n in sorted(changed.items()):
        print(f"  {k:10s} changed in {n} walks")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    d = SweepConfig()
    p.add_argument("--walks", type=int, default=d.walks)
    p.add_argument("--steps", type=int, default=d.steps)
    p.add_argument("--max-crossings", type=int, default=d.max_crossings)
    p.add_argument("--moves", nargs="*", default=list(d.moves))
    p.add_argument("--seed", type=int, default=d.seed)
    a = p.parse_args()
    main(SweepConfig(a.walks, a.steps, a.max_crossings, tuple(a.moves), a.seed))
