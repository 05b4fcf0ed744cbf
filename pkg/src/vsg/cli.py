"""Command-line front end: ``vsg <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 search exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from vsg import group as grp
from vsg import links, quandle, yamada
from vsg.code import FormatError, ValidationError, canonical_serialize, load_code, to_json, validate
from vsg.moves import FORBIDDEN_MOVES, MoveError, apply_move, enumerate_moves, moveset, sites_from_json
from vsg.normalize import normalize_forbidden_with_witness
from vsg.realize import DiagramError, diagram_dumps, diagram_loads, extract_code, realize, render_svg
from vsg.search import EXHAUSTED, BudgetConfigError, SearchConfig, search_equivalent

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_EXHAUSTED = 0, 1, 2, 3

INVALID = (FormatError, ValidationError, DiagramError, MoveError, quandle.StructureError,
           BudgetConfigError, ValueError, KeyError, OSError)
BUDGET = (yamada.BudgetError, grp.BudgetError, quandle.BudgetError)


@dataclass
class RunConfig:
    inputs: list[str] = field(default_factory=list)
    max_state_crossings: int = yamada.DEFAULT_MAX_CROSSINGS
    max_search_states: int = 1_000_000
    max_coloring_arcs: int = quandle.DEFAULT_MAX_ARCS
    moveset: str = "pliable"
    allow: tuple[str, ...] = ()
    format: str = "json"
    workers: int = 1

    def __post_init__(self):
        for name in ("max_state_crossings", "max_search_states", "max_coloring_arcs", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not set(self.allow) <= set(FORBIDDEN_MOVES):
            raise ValueError(f"--allow accepts only {', '.join(FORBIDDEN_MOVES)}")
        if self.format not in ("json", "text"):
            raise ValueError("format must be json or text")


def _allow_list(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    return tuple(sorted({t.strip().upper() for t in text.split(",") if t.strip()}))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class _Out:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, doc, text: str | None = None) -> None:
        if self.fmt == "text" and text is not None:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
        else:
            sys.stdout.write(_dump(doc) + "\n")


# -- subcommands --------------------------------------------------------------------


def cmd_validate(args, cfg, out):
    from vsg.code import parse_code
    code = parse_code(Path(args.code).read_bytes()) if args.code != "-" else parse_code(sys.stdin.buffer.read())
    report = validate(code)
    lines = ["ok"] if report.ok else [f"{v.rule}\t{v.location}" for v in report.violations]
    out.emit(report.to_json(), "\n".join(lines))
    if not report.ok:
        for v in report.violations:
            print(f"invalid: {v.rule}: {v.location}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_realize(args, cfg, out):
    d = realize(load_code(args.code), args.variant)
    text = diagram_dumps(d)
    if args.svg:
        Path(args.svg).write_text(render_svg(d))
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def cmd_gauss(args, cfg, out):
    code = extract_code(diagram_loads(Path(args.diagram).read_text()))
    sys.stdout.write(canonical_serialize(code).decode() + "\n")
    return EXIT_OK


def cmd_yamada(args, cfg, out):
    code = load_code(args.code)
    r = yamada.yamada(code, cfg.max_state_crossings)
    doc = {"R": r.to_text()}
    text = r.to_text()
    if args.normalized:
        n = yamada.normalize(r, strict=False)
        doc["normalized"] = None if r.is_zero() else n.to_text()
        text = "undefined" if r.is_zero() else n.to_text()
    out.emit(doc, text)
    return EXIT_OK


def cmd_group(args, cfg, out):
    p = grp.wirtinger(load_code(args.code))
    if args.simplify:
        p = grp.tietze_simplify(p)
    doc = {"generators": len(p.generators), "relators": len(p.relators), "presentation": p.to_text()}
    lines = [p.to_text().rstrip("\n")]
    if args.abelianize:
        ab = grp.abelianization(p)
        doc["abelianization"] = {"free_rank": ab.free_rank, "torsion": list(ab.torsion)}
        lines.append(f"abelianization: {ab}")
    if args.homs:
        g = grp.FiniteGroupTable.load(args.homs)
        n = grp.count_homs(p, g)
        doc["homs"] = n
        lines.append(f"homs: {n}")
    out.emit(doc, "\n".join(lines))
    return EXIT_OK


def cmd_quandle(args, cfg, out):
    shipped = quandle.shipped_structures()
    if args.structure in shipped and not Path(args.structure).exists():
        s = shipped[args.structure]
    else:
        s = quandle.FiniteVQS.load(args.structure)
    n = quandle.count_colorings(load_code(args.code), s, args.variant, cfg.max_coloring_arcs)
    out.emit({"colorings": n}, str(n))
    return EXIT_OK


def cmd_tg(args, cfg, out):
    code = load_code(args.code)
    if args.linking or args.bracket:
        header = ["choice", "components"]
        if args.linking:
            header.append("linking")
        if args.bracket:
            header += ["bracket", "f"]
        rows, docs = ["\t".join(header)], []
        for k, _, link in links.iter_links(code):
            row = [str(k), str(link.size)]
            if args.linking:
                row.append(",".join(str(x) for x in links.linking_numbers(link)) or "-")
            if args.bracket:
                row += [links.bracket(link, cfg.max_state_crossings).to_text(),
                        links.f_poly(link, cfg.max_state_crossings).to_text()]
            rows.append("\t".join(row))
            docs.append(dict(zip(header, row)))
        out.emit(docs, "\n".join(rows))
        return EXIT_OK
    ms = links.tg(code, include_empty=not args.no_empty, as_set=args.set)
    entries = sorted(((link.to_text(), n) for link, n in ms.items()))
    out.emit([{"link": t, "count": n} for t, n in entries],
             "\n".join(f"{n}\t{t}" for t, n in entries))
    return EXIT_OK


def cmd_moves(args, cfg, out):
    code = load_code(args.code)
    moves = moveset(cfg.moveset, cfg.allow)
    if args.action == "list":
        sites = enumerate_moves(code, moves, insertions=not args.no_insertions)
        out.emit([s.to_json() for s in sites], "\n".join(str(s) for s in sites))
        return EXIT_OK
    if not args.site:
        raise ValueError("moves apply needs --site")
    raw = Path(args.site).read_text() if Path(args.site).is_file() else args.site
    for site in sites_from_json(raw):
        code = apply_move(code, site, moves)
    sys.stdout.write(canonical_serialize(code).decode() + "\n")
    return EXIT_OK


def cmd_normalize(args, cfg, out):
    code, witness = normalize_forbidden_with_witness(load_code(args.code), args.forbidden)
    if args.witness:
        Path(args.witness).write_text(_dump([s.to_json() for s in witness]) + "\n")
    sys.stdout.write(canonical_serialize(code).decode() + "\n")
    return EXIT_OK


def cmd_search(args, cfg, out):
    a, b = load_code(args.a), load_code(args.b)
    config = SearchConfig(args.max_crossings, cfg.max_search_states,
                          moveset(cfg.moveset, cfg.allow), cfg.workers)
    v = search_equivalent(a, b, config)
    if args.witness and v.witness is not None:
        Path(args.witness).write_text(_dump([s.to_json() for s in v.witness]) + "\n")
    text = f"{v.outcome}\t{len(v.witness)} moves\t{v.stats.states} states"
    out.emit(v.to_json(), text)
    return EXIT_EXHAUSTED if v.outcome == EXHAUSTED else EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="vsg", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common])
    s.add_argument("code")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("realize", parents=[common])
    s.add_argument("code")
    s.add_argument("--svg")
    s.add_argument("--out")
    s.add_argument("--variant", type=int, default=0)
    s.set_defaults(fn=cmd_realize)

    s = sub.add_parser("gauss", parents=[common])
    s.add_argument("diagram")
    s.set_defaults(fn=cmd_gauss)

    s = sub.add_parser("yamada", parents=[common])
    s.add_argument("code")
    s.add_argument("--normalized", action="store_true")
    s.add_argument("--max-crossings", type=int, default=yamada.DEFAULT_MAX_CROSSINGS)
    s.set_defaults(fn=cmd_yamada)

    s = sub.add_parser("group", parents=[common])
    s.add_argument("code")
    s.add_argument("--simplify", action="store_true")
    s.add_argument("--abelianize", action="store_true")
    s.add_argument("--homs", metavar="GROUP.json")
    s.set_defaults(fn=cmd_group)

    s = sub.add_parser("quandle", parents=[common])
    s.add_argument("code")
    s.add_argument("--structure", required=True, metavar="VQS.json|NAME",
                   help="structure file, or one of the shipped names")
    s.add_argument("--variant", type=int, default=0)
    s.add_argument("--max-arcs", type=int, default=quandle.DEFAULT_MAX_ARCS)
    s.set_defaults(fn=cmd_quandle)

    s = sub.add_parser("tg", parents=[common])
    s.add_argument("code")
    s.add_argument("--linking", action="store_true")
    s.add_argument("--bracket", action="store_true")
    s.add_argument("--set", action="store_true", help="collapse the multiset to a set")
    s.add_argument("--no-empty", action="store_true", help="drop empty links")
    s.add_argument("--max-crossings", type=int, default=yamada.DEFAULT_MAX_CROSSINGS)
    s.set_defaults(fn=cmd_tg)

    s = sub.add_parser("moves", parents=[common])
    s.add_argument("action", choices=("list", "apply"))
    s.add_argument("code")
    s.add_argument("--site", help="MoveSite JSON (object or array), inline or a file path")
    s.add_argument("--moveset", choices=("rigid", "pliable"), default="pliable")
    s.add_argument("--allow", default="")
    s.add_argument("--no-insertions", action="store_true")
    s.set_defaults(fn=cmd_moves)

    s = sub.add_parser("normalize", parents=[common])
    s.add_argument("code")
    s.add_argument("--forbidden", choices=("viii", "pliable"), required=True)
    s.add_argument("--witness", metavar="PATH")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("search", parents=[common])
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--max-crossings", type=int, required=True)
    s.add_argument("--max-states", type=int, default=1_000_000)
    s.add_argument("--moveset", choices=("rigid", "pliable"), default="pliable")
    s.add_argument("--allow", default="")
    s.add_argument("--witness", metavar="PATH")
    s.set_defaults(fn=cmd_search)
    return p


def _config(args) -> RunConfig:
    kw = {
        "inputs": [getattr(args, k) for k in ("code", "a", "b", "diagram") if getattr(args, k, None)],
        "format": getattr(args, "format", "json"),
        "workers": getattr(args, "workers", 1),
        "moveset": getattr(args, "moveset", "pliable"),
        "allow": _allow_list(getattr(args, "allow", "")),
    }
    if getattr(args, "max_crossings", None) and args.command != "search":
        kw["max_state_crossings"] = args.max_crossings
    if getattr(args, "max_states", None):
        kw["max_search_states"] = args.max_states
    if getattr(args, "max_arcs", None):
        kw["max_coloring_arcs"] = args.max_arcs
    return RunConfig(**kw)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        return args.fn(args, cfg, _Out(cfg.format))
    except BUDGET as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except INVALID as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
