"""Print T(G) invariants for the named example codes.

    python3 scripts/tg_table.py [--names theta hopf ...] [--no-empty]
"""

import argparse
from dataclasses import dataclass, field

from vsg import generate as gen
from vsg.links import tg_invariants


@dataclass
class TableConfig:
    names: list[str] = field(default_factory=lambda: sorted(gen.NAMED))
    include_empty: bool = True


def main(cfg: TableConfig) -> None:
    for name in cfg.names:
        counts = tg_invariants(gen.NAMED[name](), include_empty=cfg.include_empty)
        print(f"# {name}")
        for (size, lks, f), n in sorted(counts.items(), key=lambda kv: (kv[0][0], str(kv[0]))):
            lk = ",".join(str(x) for x in lks) or "-"
            print(f"  {n:3d} x  components={size}  lk={lk}  f={f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--names", nargs="*", default=TableConfig().names)
    p.add_argument("--no-empty", action="store_true")
    a = p.parse_args()
    main(TableConfig(a.names, not a.no_empty))
