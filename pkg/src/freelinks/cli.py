"""Command line: every subcommand prints one JSON document.

Exit status is 0 on success, 1 when the input is rejected by the library
(the JSON then carries an error ``code``), and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, List, Optional, Sequence

from . import bracket as br
from .cover import covering_K2, kprime_from_k2, projection_Kprime
from .delta import MODES, NO_TRIVIAL, delta_L, p_PQ_all, turaev_delta
from .diagram import LinkDiagram, canonicalize, classify_crossings, parse_gauss, serialize
from .errors import FreeLinkError
from .harness import INVARIANTS, CorpusEntry, enumerate_knots, enumeration_summary, orbit, parse_corpus
from .moves import Budget, bounded_equiv, certified_nonsplit
from .parity import cycle_basis, gaussian_parities, homology_parity, p_L_parities


def _budget(args, depth: int = 2, states: int = 20000) -> Budget:
    return Budget(
        max_crossings=args.max_crossings,
        max_depth=args.budget_depth if args.budget_depth is not None else depth,
        max_states=args.budget_states if args.budget_states is not None else states,
    )


def _read_code(text: str) -> str:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read()
    return text


def _pattern(parts: Sequence[str]) -> LinkDiagram:
    """One "P / Q" argument, or P and Q as two arguments; each may name a file."""
    if len(parts) > 2:
        raise argparse.ArgumentTypeError("--pattern takes one or two arguments")
    return parse_gauss(" / ".join(_read_code(x).strip() for x in parts))


# ---------------------------------------------------------------- subcommands


def cmd_parse(d: LinkDiagram, args) -> dict:
    return {
        "components": len(d.components),
        "crossings": d.n_crossings,
        "types": classify_crossings(d),
        "serialized": serialize(d),
    }


def cmd_canon(d: LinkDiagram, args) -> dict:
    return {"canonical": canonicalize(d, ordered=args.ordered, oriented=args.oriented)}


def cmd_parity(d: LinkDiagram, args) -> dict:
    if args.rule == "gaussian":
        return gaussian_parities(d, args.component).values
    if args.rule == "pL":
        k = 0 if args.component is None else args.component
        return p_L_parities(d, k, 1 - k).values
    k = 0 if args.component is None else args.component
    basis = cycle_basis(d, 1 - k)
    out = {}
    for i, cyc in enumerate(basis.cycles):
        out[str(i)] = {
            "markers": sorted(cyc.markers),
            "valid": cyc.valid,
            "values": {v: homology_parity(d, v, cyc, k) for v in d.pure_crossings(k)} if cyc.valid else None,
        }
    return {"rank": basis.rank, "cycles": out}


def cmd_bracket(d: LinkDiagram, args) -> dict:
    if args.space == "G":
        return br.bracket_full(d).to_json()
    if args.space == "G1":
        return br.bracket_knot(d).to_json()
    return br.bracket_rel_classes(d).to_json()


def cmd_delta(d: LinkDiagram, args) -> dict:
    budget = _budget(args, depth=1, states=2000)
    strict = not args.lax
    if args.pattern:
        pattern = _pattern(args.pattern)
        return {"pPQ": p_PQ_all(d, pattern, filter_budget=budget)}
    if len(d.components) == 2:
        mode = args.mode or "nonsplit"
        return delta_L(d, mode, budget, strict).to_json()
    return turaev_delta(d, args.mode or NO_TRIVIAL, budget, strict).to_json()


def cmd_cover(d: LinkDiagram, args) -> dict:
    out = {}
    if args.emit in ("k2", "both"):
        out["k2"] = covering_K2(d).to_json()
    if args.emit in ("kprime", "both"):
        if len(d.components) == 1:
            out["kprime"] = serialize(projection_Kprime(d))
        else:
            out["kprime"] = serialize(kprime_from_k2(covering_K2(d)))
    return out


def cmd_equiv(args) -> dict:
    d1, d2 = parse_gauss(args.code), parse_gauss(args.other)
    return bounded_equiv(d1, d2, _budget(args, depth=4), ordered=args.ordered).to_json()


def cmd_split(d: LinkDiagram, args) -> dict:
    v = certified_nonsplit(d, _budget(args))
    out = {"outcome": v.outcome, "certificate": v.certificate}
    if v.path:
        out["path"] = [s.to_json() for s in v.path]
    return out


def cmd_orbit(d: LinkDiagram, args) -> dict:
    names = args.invariants.split(",") if args.invariants else ["bracket"]
    pattern = _pattern(args.pattern) if args.pattern else None
    report = orbit(d, args.seed, args.length, names, max_crossings=args.max_crossings, pattern=pattern)
    return report.to_json()


def cmd_enumerate(args) -> dict:
    records = list(enumerate_knots(args.max_chords, with_delta=args.delta))
    return {"diagrams": [r.to_json() for r in records], "summary": enumeration_summary(records)}


PER_DIAGRAM: dict = {
    "parse": cmd_parse,
    "canon": cmd_canon,
    "parity": cmd_parity,
    "bracket": cmd_bracket,
    "delta": cmd_delta,
    "cover": cmd_cover,
    "split": cmd_split,
    "orbit": cmd_orbit,
}


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--corpus", metavar="FILE", help="run on every 'name: code' line of FILE")
    common.add_argument("--budget-depth", "--max-depth", dest="budget_depth", type=int)
    common.add_argument("--budget-states", "--max-states", dest="budget_states", type=int)
    common.add_argument("--max-crossings", type=int)

    p = argparse.ArgumentParser(prog="freelinks", description="Free knots and links as Gauss codes.")
    sub = p.add_subparsers(dest="command", required=True)

    def diagram_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("code", nargs="?", help='Gauss code, e.g. "1 2 1 2" or "a b / a b"')
        return sp

    diagram_cmd("parse", "validate and describe a diagram")
    sp = diagram_cmd("canon", "canonical form")
    sp.add_argument("--ordered", action="store_true", help="keep component order")
    sp.add_argument("--oriented", action="store_true", help="forbid reversing components")

    sp = diagram_cmd("parity", "crossing parities")
    sp.add_argument("--rule", choices=["gaussian", "pL", "homology"], default="gaussian")
    sp.add_argument("--component", type=int)

    sp = diagram_cmd("bracket", "parity bracket")
    sp.add_argument("--space", choices=["G", "G1", "G2rel"], default="G1")

    sp = diagram_cmd("delta", "cobracket of a knot, delta_L of a two-component link, or p_PQ")
    sp.add_argument("--mode", choices=sorted(MODES))
    sp.add_argument("--pattern", nargs="+", metavar="P", help='"P / Q", or P and Q separately (codes or files); prints p_PQ')
    sp.add_argument("--lax", action="store_true", help="drop summands whose filter is undecided")

    sp = diagram_cmd("cover", "two-fold covering and projection")
    sp.add_argument("--emit", choices=["k2", "kprime", "both"], default="both")

    diagram_cmd("split", "certified split / nonsplit verdict")

    sp = diagram_cmd("orbit", "seeded random move sequence with invariant tracking")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--length", type=int, default=10)
    sp.add_argument("--invariants", help=f"comma separated, from: {', '.join(INVARIANTS)}")
    sp.add_argument("--pattern", nargs="+", metavar="P", help="pattern for pPQ-axioms, as for delta")

    sp = sub.add_parser("equiv", parents=[common], help="bounded equivalence search")
    sp.add_argument("code")
    sp.add_argument("other")
    sp.add_argument("--ordered", action="store_true")

    sp = sub.add_parser("enumerate", parents=[common], help="all knot diagrams up to a chord count")
    sp.add_argument("--max-chords", type=int, default=4)
    sp.add_argument("--delta", action="store_true", help="also compute the cobracket")
    return p


def _emit(obj, pretty: bool) -> None:
    print(json.dumps(obj, indent=2 if pretty else None, sort_keys=True))


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "equiv":
            result = cmd_equiv(args)
        elif args.command == "enumerate":
            if args.max_chords > 8:
                parser.error("--max-chords is limited to 8")
            result = cmd_enumerate(args)
        else:
            fn: Callable = PER_DIAGRAM[args.command]
            if args.corpus:
                with open(args.corpus, encoding="utf-8") as fh:
                    entries: List[CorpusEntry] = parse_corpus(fh.read())
                result = {}
                for e in sorted(entries, key=lambda e: e.name):
                    try:
                        result[e.name] = fn(e.diagram, args)
                    except FreeLinkError as exc:
                        result[e.name] = {"error": exc.to_json()}
            elif args.code is None:
                parser.error("a diagram or --corpus is required")
            else:
                result = fn(parse_gauss(args.code), args)
    except FreeLinkError as exc:
        _emit({"error": exc.to_json()}, args.pretty)
        return 1
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except OSError as exc:
        _emit({"error": {"code": "IOError", "message": str(exc)}}, args.pretty)
        return 1
    _emit(result, args.pretty)
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
