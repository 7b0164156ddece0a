"""Command-line front end.

Property failures are data and exit 0; only tool faults (bad input, bounds,
inconsistent oracles) exit non-zero.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import checks, explorer, generators, io
from .closure import cld_lattice
from .corpus import STANDARD_CORPUS, corpus
from .dot import emit_dot, emit_window_dot
from .errors import ConvGeomError, ParseError
from .lattice import FiniteLattice, construct

OUTPUT_DIR_ENV = "CONVGEOM_OUTPUT_DIR"


def _output_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, output: str | None) -> None:
    if output:
        p = _output_path(output)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_lattice(args) -> FiniteLattice:
    if args.lattice:
        return construct(args.lattice)
    if not args.input:
        raise ParseError("give --input FILE or --lattice EXPR")
    data = io.read_json(args.input)
    if io.is_closure_file(data):
        return cld_lattice(io.closure_from_dict(data))
    return io.lattice_from_dict(data)


def _report_text(r: checks.PropertyReport) -> str:
    lines = [f"{k}: {str(v).lower()}" for k, v in r.flags.items()]
    lines.append(f"agreement: {str(r.agreement).lower()}")
    for k in ("atomistic", "distributive", "sd_join", "lower_semimodular", "corollary_holds"):
        lines.append(f"{k}: {str(getattr(r, k)).lower()}")
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    L = _load_lattice(args)
    report = checks.scs_geom_report(L, ident=args.input or args.lattice)
    if args.format == "dot":
        sd = checks.is_sd_join(L)
        lsm = checks.is_lower_semimodular(L)
        witness = sd[1:] if sd is not True else (lsm if lsm is not True else ())
        _emit(emit_dot(L, ("ji", "witness"), witness), args.output)
    elif args.format == "text":
        _emit(_report_text(report), args.output)
    else:
        _emit(io.dumps(report.to_dict()) + "\n", args.output)
    return 0


def cmd_decompose(args) -> int:
    L = _load_lattice(args)
    if args.format == "dot":
        _emit(emit_dot(L, ("ji", "extreme")), args.output)
        return 0
    rows = []
    for w in range(len(L)):
        cjd = checks.canonical_join_decomposition(L, w)
        if cjd is None:
            info = checks.minimal_separator_obstruction(L, w)
            row = {"element": L.names[w], "decomposition": None}
            if info is not None:
                row["cover"] = L.names[info.c]
                row["minimal_separators"] = sorted(L.names[x] for x in info.minimal)
        else:
            row = {
                "element": L.names[w],
                "decomposition": sorted(L.names[k] for k in cjd.elements),
                "parts": {L.names[c]: L.names[k] for c, k in sorted(cjd.parts.items())},
            }
        rows.append(row)
    if args.format == "text":
        text = "".join(
            f"{r['element']} = " + ((" v ".join(r["decomposition"]) or "(empty join)")
                                     if r["decomposition"] is not None
                                     else f"none (cover {r.get('cover')})") + "\n"
            for r in rows)
        _emit(text, args.output)
    else:
        _emit(io.dumps(rows) + "\n", args.output)
    return 0


GENERATORS = ("co-poset", "sub-meet", "convex-sub-meet", "suborders", "filter-lattice", "lattice")


def cmd_generate(args) -> int:
    kind = args.generator
    if kind == "lattice":
        if not args.lattice:
            raise ParseError("generate lattice needs --lattice EXPR")
        L = construct(args.lattice)
        out = io.dumps(io.lattice_to_dict(L)) if args.format != "dot" else emit_dot(L)
    elif kind == "filter-lattice":
        fl = generators.filter_lattice(_load_lattice(args))
        out = io.dumps(io.lattice_to_dict(fl.lattice)) if args.format != "dot" else emit_dot(fl.lattice)
    else:
        if args.lattice:
            data = io.lattice_to_dict(construct(args.lattice))
        elif args.input:
            data = io.read_json(args.input)
        else:
            raise ParseError("give --input FILE or --lattice EXPR")
        if kind == "co-poset":
            cs = generators.co_poset(io.poset_from_dict(data))
        elif kind == "suborders":
            cs, _ = generators.suborders(io.poset_from_dict(data))
        elif kind == "sub-meet":
            cs = generators.sub_meet(io.semilattice_from_dict(data))
        else:
            cs = generators.convex_sub_meet(io.semilattice_from_dict(data))
        out = io.dumps(io.closure_to_dict(cs)) if args.format != "dot" else emit_dot(cld_lattice(cs))
    _emit(out if out.endswith("\n") else out + "\n", args.output)
    return 0


def _parse_check(text: str) -> tuple[str, tuple]:
    prop, _, rest = text.partition(":")
    return prop, tuple(s.strip() for s in rest.split(",")) if rest else ()


def cmd_explore(args) -> int:
    LL = explorer.named_instance(args.instance)
    W = explorer.explore(LL, args.depth, args.budget)
    result = {"instance": LL.name, "window": [LL.label(e) for e in W.elements],
              "truncated": sorted(LL.label(e) for e in W.truncated)}
    witness = ()
    if args.check:
        prop, raw = _parse_check(args.check)
        try:
            resolved = tuple(explorer.resolve(LL, W, a) for a in raw)
        except KeyError as exc:
            raise ParseError(f"{exc.args[0]!r} is not an element of the explored window") from None
        verdict = explorer.window_check(LL, W, prop, resolved)
        result["verdict"] = verdict.to_dict()
        witness = verdict.witness or ()
    if args.dot:
        _emit(emit_window_dot(LL, W, witness), args.dot)
    _emit(io.dumps(result) + "\n", args.output)
    return 0


def cmd_corpus(args) -> int:
    total = agree = corollary = 0
    disagreements = []
    lines = []
    for item in corpus(args.spec, allow_large=args.allow_large):
        r = checks.scs_geom_report(item.lattice, ident=item.ident)
        total += 1
        agree += r.agreement
        corollary += r.corollary_holds
        if not r.agreement:
            disagreements.append(item.ident)
        d = r.to_dict()
        d["size"] = len(item.lattice)
        lines.append(io.json.dumps(d, sort_keys=True))
    summary = {"summary": {"instances": total, "agreement": agree, "corollary_holds": corollary,
                           "disagreements": disagreements}}
    lines.append(io.json.dumps(summary, sort_keys=True))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convgeom", description="Convex geometries and their lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp):
        sp.add_argument("--input", help="lattice, poset or closure-system JSON file")
        sp.add_argument("--lattice", help="constructor expression, e.g. 'N5' or 'boolean(3)'")
        sp.add_argument("--output", help=f"write here instead of stdout (relative to ${OUTPUT_DIR_ENV} if set)")

    sp = sub.add_parser("check", help="report the equivalent convex-geometry conditions")
    source(sp)
    sp.add_argument("--format", choices=("json", "text", "dot"), default="json")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("decompose", help="canonical join decomposition of every element")
    source(sp)
    sp.add_argument("--format", choices=("json", "text", "dot"), default="json")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("generate", help="build a closure system or lattice file")
    sp.add_argument("generator", choices=GENERATORS)
    source(sp)
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("explore", help="bounded exploration of an infinite instance")
    sp.add_argument("--instance", required=True, choices=sorted(explorer.INSTANCES))
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--budget", type=int, default=4)
    sp.add_argument("--check", help="property, e.g. cover_singleton or strongly_spatial_at:top,b")
    sp.add_argument("--dot", help="also write the window as DOT to this path")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_explore)

    sp = sub.add_parser("corpus", help="stream reports over a corpus, then a summary line")
    sp.add_argument("--spec", default=STANDARD_CORPUS,
                    help="e.g. all_moore:3+all_posets:5+random_posets:200,7,1")
    sp.add_argument("--allow-large", action="store_true", help="permit Moore enumeration on 4 points")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "depth", 1) < 1 or getattr(args, "budget", 1) < 1:
        parser.error("--depth and --budget must be positive")
    try:
        return args.func(args)
    except ConvGeomError as exc:
        print(f"convgeom: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
