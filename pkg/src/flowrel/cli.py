"""Command-line front door.

Commands:
  analyze <file>         full pipeline on a flow text document
  fuzz                   randomized theorem verification
  reproduce <example>    rerun a canonical scenario and diff its golden file
  classify-pair          evidence verdict for a pair of symbolic points

Reports are JSON with sorted keys; identical (config, seed) gives
byte-identical bytes.  ``--config FILE`` supplies defaults for any flag;
explicit flags win.  The closure cap honors the FLOWREL_ELEMENT_CAP
environment variable.

Exit codes: 0 success, 1 failed checks or golden mismatch, 2 usage or
parse error, 3 monoid too large.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from importlib import resources
from pathlib import Path

from . import reports
from .circles import CirclePoint, asymptotic_class, center, pair_class
from .finflow import FlowParseError, MonoidTooLarge, element_cap, parse_flow
from .fuzz import run_fuzz
from .relations import analyze_flow
from .subshift import (
    BiSeq,
    ChaconPoint,
    ChaconXi,
    ClassifyParams,
    Dual,
    Shift,
    classify_pair,
    morse_fixed_points,
)
from .ternary import TernarySeq, constant, sp_classify

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_TOO_LARGE = 3

GOLDEN_PACKAGE = "flowrel.golden"


def dump(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def emit(report: dict, fmt: str, out: str | None, text_renderer=None) -> None:
    payload = dump(report)
    if fmt == "text" and text_renderer is not None:
        payload = text_renderer(report)
    if out:
        Path(out).write_text(payload, encoding="utf-8")
    sys.stdout.write(payload)


# --------------------------------------------------------------------------
# point descriptor mini-language


def parse_morse_point(desc: str) -> BiSeq:
    head, _, rest = desc.partition(":")
    if head == "shift":
        k, _, inner = rest.partition(":")
        return Shift(parse_morse_point(inner), int(k))
    if head == "dual":
        return Dual(parse_morse_point(rest))
    pts = morse_fixed_points()
    if desc in pts:
        return pts[desc]
    raise ValueError(f"unknown point {desc!r}; use a|b|abar|bbar with shift:K:/dual: prefixes")


def parse_chacon_point(desc: str) -> BiSeq:
    head, _, rest = desc.partition(":")
    if head == "shift":
        k, _, inner = rest.partition(":")
        return Shift(parse_chacon_point(inner), int(k))
    if desc in ("x1", "x2"):
        return ChaconPoint(desc)
    if head == "xi":
        prefix, _, tail = rest.partition(":")
        digits = tuple(int(c) for c in prefix) if prefix else ()
        return ChaconXi(digits, int(tail))
    raise ValueError(f"unknown point {desc!r}; use x1|x2|xi:PREFIX:TAIL with shift:K: prefix")


def parse_ternary_point(desc: str) -> TernarySeq:
    head, _, rest = desc.partition(":")
    if head == "shift":
        k, _, inner = rest.partition(":")
        return parse_ternary_point(inner).shifted(int(k))
    if head == "const":
        return constant(rest)
    if desc == "z":
        return reports.ternary_sample()["z"]
    if desc in reports.ternary_sample():
        return reports.ternary_sample()[desc]
    if head == "pat":
        parts = rest.split(":")
        if len(parts) != 4:
            raise ValueError("pattern form is pat:CENTER:START:LEFT:RIGHT")
        center_word, start, left, right = parts
        return TernarySeq(center_word, int(start), left, right)
    raise ValueError(f"unknown point {desc!r}; use const:C, z, a sample name, or pat:...")


def parse_circle_point(desc: str) -> CirclePoint:
    if desc == "center":
        return center()
    parts = desc.split(":")
    if len(parts) != 3 or parts[0] not in ("C", "D"):
        raise ValueError("circle points are center, C:N:ANGLE or D:N:ANGLE")
    return CirclePoint(parts[0], int(parts[1]), float(parts[2]))


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    try:
        flow = parse_flow(Path(args.flow_file).read_text(encoding="utf-8"))
    except (OSError, FlowParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        ax = analyze_flow(flow, cap=args.cap)
        report = reports.flow_report(ax)
    except MonoidTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    emit(report, args.format, args.out, reports.flow_report_text)
    failed = [c for c in report["checks"] if not c["pass"]]
    if failed:
        for c in failed:
            print(f"check failed: {c['name']}: {c['counterexample']}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_fuzz(args) -> int:
    if args.count < 1:
        print("error: --count must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    summary = run_fuzz(args.count, args.seed, max_states=args.max_states, cap=args.cap)
    emit(summary, args.format, args.out)
    return EXIT_OK if not summary["failures"] else EXIT_CHECK_FAILED


def golden_path(example: str) -> Path:
    return Path(str(resources.files(GOLDEN_PACKAGE.rsplit(".", 1)[0]) / "golden" / f"{example}.json"))


def cmd_reproduce(args) -> int:
    builder = reports.REPRODUCERS.get(args.example)
    if builder is None:
        print(f"error: unknown example {args.example!r}", file=sys.stderr)
        return EXIT_PARSE
    report = builder()
    payload = dump(report)
    path = golden_path(args.example)
    if args.bless:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(payload, encoding="utf-8")
        print(f"blessed {path}")
        return EXIT_OK
    if not path.exists():
        print(f"error: no golden file for {args.example!r}; run with --bless first", file=sys.stderr)
        return EXIT_CHECK_FAILED
    expected = path.read_text(encoding="utf-8")
    if expected == payload:
        print(f"{args.example}: golden match")
        return EXIT_OK
    diff = difflib.unified_diff(
        expected.splitlines(keepends=True), payload.splitlines(keepends=True),
        fromfile=f"golden/{args.example}.json", tofile="computed",
    )
    sys.stdout.writelines(diff)
    return EXIT_CHECK_FAILED


def cmd_classify_pair(args) -> int:
    params = ClassifyParams(depth=args.depth, gap=args.gap, horizon=args.horizon)
    try:
        if args.system in ("morse", "chacon"):
            parser = parse_morse_point if args.system == "morse" else parse_chacon_point
            x, y = parser(args.x), parser(args.y)
            rep = classify_pair(x, y, params)
            report = {"schema": reports.SCHEMA, "kind": "pair_classification",
                      "system": args.system, **rep.as_json()}
        elif args.system == "ternary":
            x, y = parse_ternary_point(args.x), parse_ternary_point(args.y)
            verdict = sp_classify(x, y)
            report = {
                "schema": reports.SCHEMA, "kind": "pair_classification",
                "system": "ternary", "x": x.describe(), "y": y.describe(),
                "params": params.as_json(), "verdicts": verdict.as_json(),
                "labels": [verdict.label],
            }
        elif args.system == "cc":
            x, y = parse_circle_point(args.x), parse_circle_point(args.y)
            pc = pair_class(x, y)
            report = {
                "schema": reports.SCHEMA, "kind": "pair_classification",
                "system": "cc", "x": x.describe(), "y": y.describe(),
                "params": params.as_json(), "verdicts": {
                    "pair": pc,
                    "x_asymptotics": asymptotic_class(x).as_json(),
                    "y_asymptotics": asymptotic_class(y).as_json(),
                },
                "labels": [pc["label"]],
            }
        else:
            print(f"error: unknown system {args.system!r}", file=sys.stderr)
            return EXIT_PARSE
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    emit(report, args.format, args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument plumbing

DEFAULTS = {
    "count": 100,
    "seed": 1,
    "max_states": 6,
    "depth": 8,
    "gap": 256,
    "horizon": 4096,
    "format": "json",
    "out": None,
    "cap": None,
}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="flowrel", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    top.add_argument("--config", help="JSON file supplying defaults for any flag")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default=None)
        p.add_argument("--out", default=None, help="also write the report to this path")
        p.add_argument("--cap", type=int, default=None, help="monoid element cap override")

    p = sub.add_parser("analyze", help="full pipeline on a flow file")
    p.add_argument("flow_file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fuzz", help="randomized theorem verification")
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-states", dest="max_states", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("reproduce", help="rerun a canonical scenario against its golden file")
    p.add_argument("example", choices=sorted(reports.REPRODUCERS))
    p.add_argument("--bless", action="store_true", help="regenerate the golden file")
    common(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("classify-pair", help="evidence verdict for a pair of points")
    p.add_argument("--system", required=True, choices=("morse", "chacon", "ternary", "cc"))
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--gap", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_classify_pair)
    return top


def apply_config(args: argparse.Namespace) -> argparse.Namespace:
    config = {}
    if args.config:
        config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    for key, fallback in DEFAULTS.items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, config.get(key, fallback))
    if getattr(args, "cap", None) is None:
        args.cap = element_cap()
    return args


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = apply_config(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
