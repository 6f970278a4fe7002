"""Command line entry point.

Exit status: 0 on success, 1 on a domain error (error JSON on stderr) or a
failed verification, 2 on a usage error.
"""
import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import quotient as qt
from .betti import SCHEMA as BETTI_SCHEMA, betti_number, betti_table, format_fraction
from .conjugacy import are_conjugate, classify, conjugacy_key, delocalized_trace
from .errors import AmalgamError, ParamMismatch
from .fox import build_d0, build_d1, build_delta0, build_delta1, build_laplacian
from .group_ring import GroupRingElement
from .normal_form import from_text, render, syllable_length
from .presentation import parse_params
from .verify import DEFAULT_SEED, verify_all, parameter_grid

WORD_GRAMMAR = """word grammar:
  word := term*            (terms separated by optional whitespace)
  term := ("s" | "t" | "r") ("^" signed-integer)?
  "r" stands for s^(m/d); "1" alone is the identity.
  example: "s^2 t^-3 r s"
"""

FORMATS = ("table", "json", "csv")


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _params(args, required=True):
    values = (args.m, args.n, args.d)
    if all(v is None for v in values):
        if required:
            raise UsageError("--m, --n and --d are required")
        return None
    if any(v is None for v in values):
        raise UsageError("--m, --n and --d must be given together")
    return parse_params(*values)


def _add_params(p):
    p.add_argument("--m", type=int, help="order of s")
    p.add_argument("--n", type=int, help="order of t")
    p.add_argument("--d", type=int, help="order of the amalgamated subgroup")


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_reduce(args, out):
    params = _params(args)
    w = from_text(args.word, params)
    if args.format == "json":
        out.write(_dump({
            "schema": "amalgam.reduce/1",
            "input": args.word,
            "normal_form": render(w),
            "central_power": w.central,
            "syllables": [["st"[f], e] for f, e in w.syllables],
            "syllable_length": syllable_length(w),
        }) + "\n")
    elif args.format == "csv":
        out.write(_csv([["input", "normal_form", "syllable_length"],
                        [args.word, render(w), syllable_length(w)]]))
    else:
        out.write(render(w) + "\n")
    return 0


def cmd_conj(args, out):
    params = _params(args)
    a, b = from_text(args.a, params), from_text(args.b, params)
    verdict = are_conjugate(a, b)
    out.write(_dump({
        "schema": "amalgam.conj/1",
        "a": render(a),
        "b": render(b),
        "conjugate": verdict,
        "kind_a": classify(a),
        "kind_b": classify(b),
    }) + "\n")
    return 0


def _read_json_arg(text):
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    return json.loads(text)


def cmd_trace(args, out):
    params = _params(args)
    try:
        data = _read_json_arg(args.element)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read element JSON: {exc}")
    element = GroupRingElement.from_json(data, params)
    g = from_text(args.class_word, params)
    value = delocalized_trace(element, g)
    if args.format == "json":
        out.write(_dump({"schema": "amalgam.trace/1", "class": render(g),
                         "value": format_fraction(value)}) + "\n")
    else:
        out.write(format_fraction(value) + "\n")
    return 0


def cmd_fox(args, out):
    params = _params(args)
    mats = {
        "delta0": build_delta0(params),
        "delta1": build_delta1(params),
        "d0": build_d0(params),
        "d1": build_d1(params),
        "laplacian": build_laplacian(params),
    }
    if args.format == "json":
        out.write(_dump({"schema": "amalgam.fox/1",
                         "params": {"m": params.m, "n": params.n, "d": params.d},
                         **{k: v.to_json() for k, v in mats.items()}}) + "\n")
    elif args.format == "csv":
        rows = [["matrix", "row", "col", "entry"]]
        for name, mat in mats.items():
            for i, row in enumerate(mat.to_text()):
                for j, x in enumerate(row):
                    rows.append([name, i + 1, j + 1, x])
        out.write(_csv(rows))
    else:
        for name, mat in mats.items():
            out.write(f"{name} ({mat.rows}x{mat.cols}):\n")
            for i, row in enumerate(mat.to_text()):
                for j, x in enumerate(row):
                    out.write(f"  [{i + 1},{j + 1}] {x}\n")
    return 0


def cmd_betti(args, out):
    params = _params(args)
    if args.class_word is not None:
        g = from_text(args.class_word, params)
        value = betti_number(g)
        if args.format == "json":
            out.write(_dump({"schema": BETTI_SCHEMA,
                             "params": {"m": params.m, "n": params.n, "d": params.d},
                             "class": render(g), "kind": classify(g),
                             "value": format_fraction(value)}) + "\n")
        elif args.format == "csv":
            out.write(_csv([["class", "value"], [render(g), format_fraction(value)]]))
        else:
            out.write(f"beta_1,<{render(g)}> = {format_fraction(value)}\n")
        return 0
    report = betti_table(params)
    if args.format == "json":
        out.write(_dump(report.to_json()) + "\n")
    elif args.format == "csv":
        out.write(report.to_csv())
    else:
        out.write(report.to_table())
    return 0


def _verify_table(report):
    lines = []
    for e in report["results"]:
        lines.append(f"{'PASS' if e['passed'] else 'FAIL'}  {e['suite']:<12} {e['name']}")
    return "\n".join(lines) + "\n"


def cmd_verify(args, out):
    if args.grid:
        grid = parameter_grid(args.grid_limit)
        reports = [verify_all(p, args.level, args.seed) for p in grid]
        passed = all(r["passed"] for r in reports)
        if args.format == "json":
            out.write(_dump({"schema": "amalgam.verify-grid/1", "level": args.level,
                             "seed": args.seed, "passed": passed,
                             "reports": [_strip_time(r) for r in reports]}) + "\n")
        else:
            for r in reports:
                p = r["params"]
                bad = [e["name"] for e in r["results"] if not e["passed"]]
                status = "PASS" if r["passed"] else "FAIL " + "; ".join(bad)
                out.write(f"({p['m']},{p['n']},{p['d']}) {status}\n")
        return 0 if passed else 1
    params = _params(args)
    report = verify_all(params, args.level, args.seed)
    if args.format == "json":
        out.write(_dump(_strip_time(report)) + "\n")
    elif args.format == "csv":
        rows = [["suite", "name", "passed"]]
        rows += [[e["suite"], e["name"], e["passed"]] for e in report["results"]]
        out.write(_csv(rows))
    else:
        out.write(_verify_table(report))
    return 0 if report["passed"] else 1


def _strip_time(report):
    # wall-clock time would break byte-identical output
    return {k: v for k, v in report.items() if k != "elapsed_seconds"}


def cmd_quotient(args, out):
    params = _params(args, required=args.rep is not None)
    if args.builtin:
        try:
            rep = qt.builtin(args.builtin)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc))
        if params is not None and params != rep.params:
            raise ParamMismatch(f"{args.builtin} is a quotient of {rep.params}, not {params}")
    else:
        try:
            doc = json.loads(Path(args.rep).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read quotient file: {exc}")
        rep = qt.load_rep(doc, params, name=Path(args.rep).stem)
    report = qt.run_checks(rep, args.check)
    if args.format == "table":
        for name, r in report["checks"].items():
            out.write(f"{'PASS' if r['passed'] else 'FAIL'}  {name} on {rep.name} "
                      f"(degree {rep.degree})\n")
            for k, v in r.items():
                if k not in ("check", "quotient", "passed", "degree"):
                    out.write(f"    {k}: {v}\n")
    else:
        out.write(_dump(report) + "\n")
    return 0 if report["passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="amalgam",
        description="Exact calculator for Z_m *_{Z_d} Z_n: normal forms, Fox calculus, "
                    "delocalized l2-Betti numbers and finite-quotient checks.",
        epilog=WORD_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, func):
        p = sub.add_parser(name, help=help_text, epilog=WORD_GRAMMAR,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        _add_params(p)
        p.add_argument("--format", choices=FORMATS, default="table")
        p.set_defaults(func=func)
        return p

    p = add("reduce", "normal form of a word", cmd_reduce)
    p.add_argument("--word", required=True)

    p = add("conj", "decide conjugacy of two words", cmd_conj)
    p.add_argument("a")
    p.add_argument("b")

    p = add("trace", "delocalized trace of a group ring element", cmd_trace)
    p.add_argument("--element", required=True,
                   help='JSON list of {"word", "num", "den"} or @FILE')
    p.add_argument("--class", dest="class_word", required=True)

    add("fox", "Fox-calculus differentials and the first Laplacian", cmd_fox)

    p = add("betti", "delocalized first l2-Betti numbers", cmd_betti)
    p.add_argument("--class", dest="class_word")

    p = add("verify", "run every identity and cross-check", cmd_verify)
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--grid", action="store_true", help="all valid (m,n,d) with m,n <= --grid-limit")
    p.add_argument("--grid-limit", type=int, default=12)

    p = add("quotient", "finite-quotient kernel and decomposition checks", cmd_quotient)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--rep", help="quotient JSON file")
    src.add_argument("--builtin", help="sl2_z_modN or psl2_z_modN")
    p.add_argument("--check", choices=("kernel", "lemma31", "decomp", "gap", "all"),
                   default="all")
    return parser


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify" and args.seed < 0:
        parser.print_usage(err)
        err.write("amalgam: error: --seed must be non-negative\n")
        return 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"amalgam: error: {exc}\n{WORD_GRAMMAR}")
        return 2
    except AmalgamError as exc:
        err.write(json.dumps(exc.to_json()) + "\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
