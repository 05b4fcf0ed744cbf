"""Bounded equivalence search between two named codes.

    python3 scripts/search_demo.py kink unknot --max-crossings 2
    python3 scripts/search_demo.py unknot virtual-trefoil --max-crossings 4
"""

import argparse
import time
from dataclasses import dataclass

from vsg import generate as gen
from vsg.search import SearchConfig, search_equivalent


@dataclass
class DemoConfig:
    a: str = "kink"
    b: str = "unknot"
    max_crossings: int = 2
    max_states: int = 100_000
    workers: int = 1


def main(cfg: DemoConfig) -> None:
    start = time.perf_counter()
    v = search_equivalent(gen.NAMED[cfg.a](), gen.NAMED[cfg.b](),
                          SearchConfig(cfg.max_crossings, cfg.max_states, workers=cfg.workers))
    print(f"{cfg.a} vs {cfg.b}: {v.outcome} after {v.stats.states} states "
          f"({time.perf_counter() - start:.1f}s)")
    for site in v.witness:
        print("  ", site)


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    d = DemoConfig()
    p.add_argument("a", nargs="?", default=d.a, choices=sorted(gen.NAMED))
    p.add_argument("b", nargs="?", default=d.b, choices=sorted(gen.NAMED))
    p.add_argument("--max-crossings", type=int, default=d.max_crossings)
    p.add_argument("--max-states", type=int, default=d.max_states)
    p.add_argument("--workers", type=int, default=d.workers)
    a = p.parse_args()
    main(DemoConfig(a.a, a.b, a.max_crossings, a.max_states, a.workers))
