"""Command-line front end: ``hbeq check|models|reduce|lattice``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import characterization as ch
from .decision import (BudgetExceededError, DecisionError, LATTICE_BUDGET, Verdict,
                       corners, decide_equivalence, default_budget,
                       equivalence_lattice_report, oracle_equivalence,
                       validate_counterexample)
from .reduction import reduce_to_ordinary
from .semantics import answer_sets, ordinary_equivalent
from .syntax import AlphabetPair, Program, ProgramSyntaxError, Workspace, parse_program, \
    render_program

SCHEMA_ID = "hbeq-report/1"

EXIT_EQUIVALENT = 0
EXIT_DIFFERENT = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


def _add_alphabet_flags(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("alphabets (default: --strong)")
    g.add_argument("--heads", help='head alphabet: comma list, "all" or "none"')
    g.add_argument("--bodies", help='body alphabet: comma list, "all" or "none"')
    g.add_argument("--strong", action="store_true", help="H = B = universe")
    g.add_argument("--uniform", action="store_true", help="H = universe, B = none")
    g.add_argument("--ordinary", action="store_true", help="H = none, B = universe")
    g.add_argument("--rel-strong", metavar="A", help="H = B = A")
    g.add_argument("--rel-uniform", metavar="A", help="H = A, B = none")
    sp.add_argument("--universe", default="",
                    help="extra atoms to add to the universe (comma list)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hbeq", description=__doc__)
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="decide <H,B>-equivalence of two programs")
    sp.add_argument("first")
    sp.add_argument("second")
    _add_alphabet_flags(sp)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--oracle", action="store_true",
                      help="decide by enumerating all unary contexts")
    mode.add_argument("--verify", action="store_true",
                      help="run both deciders and fail on disagreement")
    sp.add_argument("--budget", type=int, help="unary-context budget (env HBEQ_BUDGET)")

    sp = sub.add_parser("models", help="list a model characterization of one program")
    sp.add_argument("program")
    _add_alphabet_flags(sp)
    sp.add_argument("--family", default="hb",
                    choices=["hb", "se", "ue", "rel-se", "rel-ue", "answer-sets"])

    sp = sub.add_parser("reduce", help="compile to an ordinary-equivalence problem")
    sp.add_argument("first")
    sp.add_argument("second")
    _add_alphabet_flags(sp)
    sp.add_argument("--mode", default="disjunctive", choices=["disjunctive", "normal"])
    sp.add_argument("--out", required=True, help="output prefix; writes PREFIX.left.lp and "
                    "PREFIX.right.lp")
    sp.add_argument("--check", action="store_true",
                    help="also decide ordinary equivalence of the compiled pair")

    sp = sub.add_parser("lattice", help="verdicts for every alphabet pair")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--universe", default="")
    sp.add_argument("--budget", type=int, default=LATTICE_BUDGET)
    return ap


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _load(path: str, ws: Workspace) -> Program:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    try:
        return parse_program(text, ws)
    except ProgramSyntaxError as e:
        raise UsageError(f"{path}:{e}") from e


def _atoms(names: list[str], ws: Workspace, universe: int, what: str) -> int:
    mask = 0
    for n in names:
        if n in ws and (1 << ws.id_of(n)) & universe:
            mask |= 1 << ws.id_of(n)
        else:
            print(f"warning: {what} atom {n!r} is not in the universe; ignored",
                  file=sys.stderr)
    return mask


def _alphabet_part(spec: str | None, ws: Workspace, universe: int, what: str) -> int:
    if spec is None or spec.strip() in ("", "none"):
        return 0
    if spec.strip() == "all":
        return universe
    return _atoms(_split(spec), ws, universe, what)


def resolve_alphabet(args, ws: Workspace, universe: int) -> tuple[AlphabetPair, str]:
    presets = [n for n in ("strong", "uniform", "ordinary") if getattr(args, n)]
    presets += [n for n in ("rel_strong", "rel_uniform") if getattr(args, n) is not None]
    explicit = args.heads is not None or args.bodies is not None
    if len(presets) + explicit > 1:
        raise UsageError("choose one of --heads/--bodies or a single preset")
    if explicit:
        return AlphabetPair(_alphabet_part(args.heads, ws, universe, "head"),
                            _alphabet_part(args.bodies, ws, universe, "body")), "explicit"
    preset = presets[0] if presets else "strong"
    if preset == "strong":
        return AlphabetPair(universe, universe), preset
    if preset == "uniform":
        return AlphabetPair(universe, 0), preset
    if preset == "ordinary":
        return AlphabetPair(0, universe), preset
    a = _atoms(_split(getattr(args, preset)), ws, universe, "relativization")
    if preset == "rel_strong":
        return AlphabetPair(a, a), "rel-strong"
    return AlphabetPair(a, 0), "rel-uniform"


def _universe(args, ws: Workspace, *progs: Program) -> int:
    u = 0
    for p in progs:
        u |= p.atoms
    return u | ws.mask(_split(args.universe))


def _alphabet_json(ab: AlphabetPair, preset: str, ws: Workspace) -> dict:
    return {"preset": preset, "heads": ws.names(ab.heads), "bodies": ws.names(ab.bodies)}


def _verdict_json(v: Verdict, ws: Workspace) -> dict:
    out = {"equivalent": v.equivalent, "method": v.method, "witness": None,
           "counterexample": None}
    if v.witness is not None:
        out["witness"] = {"x": ws.names(v.witness.x), "y": ws.names(v.witness.y),
                          "direction": v.witness.direction}
    if v.counterexample is not None:
        c = v.counterexample
        out["counterexample"] = {"program": render_program(c.context),
                                 "distinguishing": ws.names(c.distinguishing),
                                 "side": c.side}
    return out


def cmd_check(args) -> tuple[int, dict]:
    ws = Workspace()
    p, q = _load(args.first, ws), _load(args.second, ws)
    u = _universe(args, ws, p, q)
    ab, preset = resolve_alphabet(args, ws, u)
    budget = args.budget if args.budget is not None else default_budget()
    if args.oracle:
        v = oracle_equivalence(p, q, ab, u, budget)
    else:
        v = decide_equivalence(p, q, ab, u)
        if args.verify:
            o = oracle_equivalence(p, q, ab, u, budget)
            if o.equivalent != v.equivalent:
                raise DecisionError("characterization and oracle disagree")
    if v.counterexample is not None:
        # the emitted context must survive a print/parse round trip
        reparsed = parse_program(render_program(v.counterexample.context), ws)
        again = type(v.counterexample)(reparsed, v.counterexample.distinguishing,
                                       v.counterexample.side)
        problem = validate_counterexample(again, ab, p, q, u)
        if problem:
            raise DecisionError(f"emitted counterexample is invalid: {problem}")
    report = {
        "command": "check",
        "inputs": [args.first, args.second],
        "alphabet": _alphabet_json(ab, preset, ws),
        "universe": ws.names(u),
        "verdict": _verdict_json(v, ws),
    }
    return (EXIT_EQUIVALENT if v.equivalent else EXIT_DIFFERENT), report


def _pairs_json(c: ch.Characterization, ws: Workspace) -> list:
    return [[ws.names(x), ws.names(y)] for x, y in c.pairs]


def cmd_models(args) -> tuple[int, dict]:
    ws = Workspace()
    p = _load(args.program, ws)
    u = _universe(args, ws, p)
    ab, preset = resolve_alphabet(args, ws, u)
    fam = args.family
    if fam == "answer-sets":
        listing = [ws.names(y) for y in answer_sets(p, u)]
    else:
        c = {
            "hb": lambda: ch.hb_models(p, ab, u),
            "se": lambda: ch.se_models(p, u),
            "ue": lambda: ch.ue_models(p, u),
            "rel-se": lambda: ch.rel_se_models(p, ab.heads, u),
            "rel-ue": lambda: ch.rel_ue_models(p, ab.heads, u),
        }[fam]()
        listing = _pairs_json(c, ws)
    report = {
        "command": "models",
        "inputs": [args.program],
        "family": fam,
        "alphabet": _alphabet_json(ab, preset, ws),
        "universe": ws.names(u),
        "models": listing,
    }
    return EXIT_EQUIVALENT, report


def cmd_reduce(args) -> tuple[int, dict]:
    ws = Workspace()
    p, q = _load(args.first, ws), _load(args.second, ws)
    u = _universe(args, ws, p, q)
    ab, preset = resolve_alphabet(args, ws, u)
    out = reduce_to_ordinary(p, q, ab, args.mode, u)
    paths = [Path(f"{args.out}.left.lp"), Path(f"{args.out}.right.lp")]
    try:
        for path, prog in zip(paths, (out.left, out.right)):
            path.write_text(render_program(prog) + "\n", encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot write output: {e}") from e
    report = {
        "command": "reduce",
        "inputs": [args.first, args.second],
        "alphabet": _alphabet_json(ab, preset, ws),
        "universe": ws.names(u),
        "mode": out.mode,
        "fresh": ws.names(out.fresh),
        "outputs": [str(p) for p in paths],
        "ordinary_equivalent": None,
    }
    if args.check:
        report["ordinary_equivalent"] = ordinary_equivalent(out.left, out.right)
    return EXIT_EQUIVALENT, report


def cmd_lattice(args) -> tuple[int, dict]:
    ws = Workspace()
    p, q = _load(args.first, ws), _load(args.second, ws)
    u = _universe(args, ws, p, q)
    table = equivalence_lattice_report(p, q, u, args.budget)
    names = {v: k for k, v in corners(u).items()}
    rows = [{"heads": ws.names(h), "bodies": ws.names(b), "equivalent": eq,
             "corner": names.get((h, b))}
            for (h, b), eq in sorted(table.items())]
    report = {
        "command": "lattice",
        "inputs": [args.first, args.second],
        "universe": ws.names(u),
        "entries": rows,
        "corners": {k: table[v] for k, v in corners(u).items()},
    }
    return EXIT_EQUIVALENT, report


def _fmt_set(names: list[str]) -> str:
    return "{" + ",".join(names) + "}"


def render_text(report: dict) -> str:
    lines = []
    cmd = report["command"]
    if "alphabet" in report:
        a = report["alphabet"]
        lines.append(f"alphabet: H={_fmt_set(a['heads'])} B={_fmt_set(a['bodies'])}"
                     f" ({a['preset']})")
    lines.append(f"universe: {_fmt_set(report['universe'])}")
    if cmd == "check":
        v = report["verdict"]
        lines.append(f"equivalent: {'yes' if v['equivalent'] else 'no'} [{v['method']}]")
        if v["witness"]:
            w = v["witness"]
            lines.append(f"witness ({w['direction']}): X={_fmt_set(w['x'])} "
                         f"Y={_fmt_set(w['y'])}")
        if v["counterexample"]:
            c = v["counterexample"]
            lines.append(f"answer set {_fmt_set(c['distinguishing'])} only for the "
                         f"{c['side']} program under context:")
            lines.extend("  " + ln for ln in (c["program"] or "% (empty)").splitlines())
    elif cmd == "models":
        lines.append(f"{report['family']} ({len(report['models'])}):")
        for m in report["models"]:
            if m and isinstance(m[0], list):
                lines.append(f"  ({_fmt_set(m[0])}, {_fmt_set(m[1])})")
            else:
                lines.append(f"  {_fmt_set(m)}")
    elif cmd == "reduce":
        lines.append(f"mode: {report['mode']}")
        lines.append(f"fresh atoms: {', '.join(report['fresh'])}")
        lines.extend(f"wrote {p}" for p in report["outputs"])
        if report["ordinary_equivalent"] is not None:
            lines.append(f"ordinarily equivalent: {report['ordinary_equivalent']}")
    elif cmd == "lattice":
        for row in report["entries"]:
            mark = f"  <- {row['corner']}" if row["corner"] else ""
            lines.append(f"  H={_fmt_set(row['heads']):<12} B={_fmt_set(row['bodies']):<12}"
                         f" {'=' if row['equivalent'] else '≠'}{mark}")
    return "\n".join(lines)


COMMANDS = {"check": cmd_check, "models": cmd_models, "reduce": cmd_reduce,
            "lattice": cmd_lattice}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_EQUIVALENT
    start = time.perf_counter()
    try:
        code, report = COMMANDS[args.command](args)
    except (UsageError, BudgetExceededError, DecisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    report["schema_id"] = SCHEMA_ID
    report["exit_code"] = code
    report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
