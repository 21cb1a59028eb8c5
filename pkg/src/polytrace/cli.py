"""Command-line front end: ``polytrace {trace,check,gen,plot}``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .generator import PROFILES, generate_scene
from .rootiso import sign_at
from .ltl import FormulaSyntaxError, UnknownAtomError, lasso_check, parse_formula
from .scenefile import SceneFormatError, dump_scene, load_scene
from .trace_gen import (
    SceneError,
    SuffixSpec,
    certify_trace,
    spline_trace,
    stutter_reduce,
    trace_segments,
    trajectory_trace,
)

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    raw_trace: str
    reduced_trace: str
    lasso: str
    certificate: bool
    verdict: str | None = None
    timings: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1)


def format_letter(letter, order: Sequence[str]) -> str:
    return "{" + ",".join(i for i in order if i in letter) + "}"


def format_word(word, order: Sequence[str]) -> str:
    return ",".join(format_letter(a, order) for a in word)


def format_lasso(lasso, order: Sequence[str]) -> str:
    loop = f"({format_word(lasso.loop, order)})^w"
    if lasso.prefix:
        return f"{format_word(lasso.prefix, order)},{loop}"
    return loop


def to_decimal(x, digits: int) -> str:
    """Round an exact rational to ``digits`` decimals (ties to even)."""
    x = Fraction(x)
    scaled = round(x * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes for per-segment tracing")
    p.add_argument("--raw", action="store_true", help="print the trace without stutter reduction")
    p.add_argument("--digits", type=int, default=6, metavar="D", help="decimal places in CSV output")
    p.add_argument("--accept-floats", action="store_true", help="convert float literals in scene files exactly")
    p.add_argument("--report", metavar="FILE", help="write a JSON run report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polytrace", description="Exact traces of polynomial paths and LTL checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="print the trace of a scene")
    p.add_argument("scene")
    _common(p)

    p = sub.add_parser("check", help="check a scene's trace against an LTL formula")
    p.add_argument("scene")
    p.add_argument("formula", help="formula file ('-' reads stdin)")
    _common(p)

    p = sub.add_parser("gen", help="generate a random scene")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--regions", "-M", type=int, default=9)
    p.add_argument("--segments", type=int, default=8)
    p.add_argument("--dimension", type=int, default=2)
    p.add_argument("--profile", choices=PROFILES, default="quadric")
    p.add_argument("--features", action="store_true", help="plant a bounce and a double crossing")
    p.add_argument("--suffix", choices=("invariant", "cyclic", "direct"), default="invariant")
    p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("plot", help="export path samples and checkpoints as CSV")
    p.add_argument("scene")
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    _common(p)
    return parser


def _trace_report(args, out) -> tuple[RunReport, object, list]:
    timings = {}
    t = time.perf_counter()
    scene = load_scene(args.scene, accept_floats=args.accept_floats)
    timings["load"] = time.perf_counter() - t

    t = time.perf_counter()
    parts = trace_segments(scene, max(1, args.jobs))
    raw = spline_trace(scene, segments=parts)
    lasso = trajectory_trace(scene, segments=parts)
    timings["trace"] = time.perf_counter() - t

    t = time.perf_counter()
    ok = all(certify_trace(st.P, st.V, st.checkpoints) for st in parts)
    timings["certify"] = time.perf_counter() - t

    order = [r.id for r in scene.regions]
    report = RunReport(
        raw_trace=format_word(raw, order),
        reduced_trace=format_word(stutter_reduce(raw), order),
        lasso=format_lasso(lasso, order),
        certificate=ok,
        timings=timings,
    )
    shown = report.raw_trace if args.raw else report.reduced_trace
    print(f"trace={shown}", file=out)
    print(f"lasso={report.lasso}", file=out)
    print(f"certificate={'ok' if ok else 'FAILED'}", file=out)
    return report, scene, lasso


def _write_report(args, report: RunReport) -> None:
    if getattr(args, "report", None):
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")


def cmd_trace(args, out=None) -> int:
    out = out or sys.stdout
    report, _, _ = _trace_report(args, out)
    _write_report(args, report)
    return EXIT_OK if report.certificate else EXIT_ERROR


def cmd_check(args, out=None) -> int:
    out = out or sys.stdout
    if args.formula == "-":
        text = sys.stdin.read()
    else:
        with open(args.formula, encoding="utf-8") as fh:
            text = fh.read()
    formula = parse_formula(text)
    report, scene, lasso = _trace_report(args, out)
    t = time.perf_counter()
    verdict = lasso_check(lasso, formula, alphabet=[r.id for r in scene.regions])
    report.timings["check"] = time.perf_counter() - t
    report.verdict = "satisfied" if verdict.satisfied else "violated"
    print(f"verdict={report.verdict}", file=out)
    _write_report(args, report)
    if not report.certificate:
        return EXIT_ERROR
    return EXIT_OK if verdict.satisfied else EXIT_VIOLATED


def cmd_gen(args, out=None) -> int:
    out = out or sys.stdout
    if args.suffix == "cyclic":
        raise SceneError("generated paths are open; a cyclic suffix needs a closed loop")
    scene = generate_scene(
        args.seed,
        args.regions,
        args.segments,
        dimension=args.dimension,
        profile=args.profile,
        features=args.features,
        suffix=SuffixSpec(args.suffix),
    )
    text = dump_scene(scene)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_plot(args, out=None) -> int:
    out = out or sys.stdout
    if args.samples < 2:
        raise ValueError("--samples must be at least 2")
    scene = load_scene(args.scene, accept_floats=args.accept_floats)
    parts = trace_segments(scene, max(1, args.jobs))
    order = [r.id for r in scene.regions]
    n = scene.dimension

    fh = open(args.output, "w", newline="", encoding="utf-8") if args.output else out
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["segment", "s"] + [f"x{i + 1}" for i in range(n)] + ["letter", "provenance"])
        for k, (seg, st) in enumerate(zip(scene.segments, parts)):
            rows = {c.s: (c.letter, c.provenance) for c in st.checkpoints}
            for i in range(args.samples):
                s = Fraction(i, args.samples - 1)
                rows.setdefault(s, (_letter_at(st, order, s), "sample"))
            for s, (letter, prov) in sorted(rows.items()):
                x = seg(s)
                w.writerow(
                    [k, to_decimal(s, args.digits)]
                    + [to_decimal(v, args.digits) for v in x]
                    + [";".join(i for i in order if i in letter), prov]
                )
    finally:
        if fh is not out:
            fh.close()
    return EXIT_OK


def _letter_at(st, order, s) -> frozenset:
    return frozenset(i for i, p in zip(order, st.composites) if sign_at(p.coeffs, s) <= 0)


COMMANDS = {"trace": cmd_trace, "check": cmd_check, "gen": cmd_gen, "plot": cmd_plot}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SceneFormatError, SceneError, FormulaSyntaxError, UnknownAtomError, ValueError, OSError) as exc:
        print(f"polytrace: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
