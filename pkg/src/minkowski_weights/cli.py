"""Command line interface.

Exit codes: 0 success, 1 negative verdict (unbalanced weight, infeasible
constraints), 2 usage error, 3 parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import balance, figure
from .field import format_scalar, to_float
from .fileio import (
    FormatError,
    ValidationError,
    format_skeleton,
    format_weight,
    parse_edge_ref,
    read_pins,
    read_skeleton,
    read_weight,
)
from .skeleton import BUILTIN_NAMES, SkeletonError, builtin_polytope

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class _Output:
    """Writes either human-readable text or one JSON record per line."""

    def __init__(self, stream: TextIO, records: bool, approx: int | None) -> None:
        self.stream = stream
        self.records = records
        self.approx = approx

    def scalar(self, x) -> str:
        return format_scalar(x)

    def weights(self, w: balance.WeightVector) -> dict[str, str]:
        return {f"{a}:{b}": format_scalar(v) for (a, b), v in w.items()}

    def record(self, kind: str, **fields) -> None:
        payload = {"kind": kind, **fields}
        self.stream.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")

    def text(self, line: str = "") -> None:
        self.stream.write(line + "\n")

    def weight_block(self, title: str, w: balance.WeightVector) -> None:
        self.text(f"# {title}")
        self.stream.write(format_weight(w, self.approx))

    def approx_map(self, w: balance.WeightVector) -> dict[str, str]:
        return {f"{a}:{b}": to_float(v, self.approx) for (a, b), v in w.items()}


def _weight_record(out: _Output, kind: str, w: balance.WeightVector, **extra) -> None:
    fields = dict(extra, weights=out.weights(w))
    if out.approx:
        fields["approx"] = out.approx_map(w)
    out.record(kind, **fields)


def _vector_text(v, out: _Output) -> str:
    body = "(" + ", ".join(format_scalar(x) for x in v) + ")"
    if out.approx:
        body += "  # ~(" + ", ".join(to_float(x, out.approx) for x in v) + ")"
    return body


# -- subcommands -------------------------------------------------------------


def cmd_polytope(args, out: _Output) -> int:
    text = format_skeleton(builtin_polytope(args.name))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif out.records:
        out.record("skeleton", name=args.name, text=text)
    else:
        out.stream.write(text)
    return EXIT_OK


def cmd_dim(args, out: _Output) -> int:
    basis = balance.weight_space(read_skeleton(args.skeleton, strict=not args.lenient))
    if out.records:
        out.record("dimension", dimension=basis.dimension)
    else:
        out.text(str(basis.dimension))
    return EXIT_OK


def cmd_basis(args, out: _Output) -> int:
    basis = balance.weight_space(read_skeleton(args.skeleton, strict=not args.lenient))
    if out.records:
        out.record("dimension", dimension=basis.dimension)
        for i, v in enumerate(basis, start=1):
            _weight_record(out, "basis-vector", v, index=i)
    else:
        out.text(f"dimension {basis.dimension}")
        for i, v in enumerate(basis, start=1):
            out.weight_block(f"basis vector {i}", v)
    return EXIT_OK


def cmd_check(args, out: _Output) -> int:
    skeleton = read_skeleton(args.skeleton, strict=not args.lenient)
    weight = read_weight(args.weight, skeleton)
    verdict = balance.is_balanced(skeleton, weight)
    if out.records:
        out.record(
            "verdict",
            balanced=verdict.balanced,
            failing=[v for v, _ in verdict.failures],
        )
        for v, r in verdict.failures:
            fields = {"vertex": v, "residual": [format_scalar(x) for x in r]}
            if out.approx:
                fields["approx"] = [to_float(x, out.approx) for x in r]
            out.record("residual", **fields)
    elif verdict.balanced:
        out.text("balanced")
    else:
        out.text(f"unbalanced at {len(verdict.failures)} rays")
        for v, r in verdict.failures:
            out.text(f"residual {v} {_vector_text(r, out)}")
    return EXIT_OK if verdict.balanced else EXIT_NEGATIVE


def cmd_solve(args, out: _Output) -> int:
    skeleton = read_skeleton(args.skeleton, strict=not args.lenient)
    pins = read_pins(args.pin, skeleton) if args.pin else {}
    zeros = [parse_edge_ref(z, skeleton) for z in args.zero or ()]
    result = balance.constrained_solve(skeleton, pins, zeros)
    if result is None:
        if out.records:
            out.record("solution", feasible=False)
        else:
            out.text("infeasible")
        return EXIT_NEGATIVE
    if out.records:
        out.record("solution", feasible=True, dimension=result.dimension)
        _weight_record(out, "particular", result.particular)
        for i, v in enumerate(result.homogeneous, start=1):
            _weight_record(out, "basis-vector", v, index=i)
    else:
        out.text(f"feasible dimension {result.dimension}")
        out.weight_block("particular solution", result.particular)
        for i, v in enumerate(result.homogeneous, start=1):
            out.weight_block(f"homogeneous basis vector {i}", v)
    return EXIT_OK


def cmd_scan(args, out: _Output) -> int:
    skeleton = read_skeleton(args.skeleton, strict=not args.lenient)
    reports = balance.support_scan(skeleton, workers=args.workers)
    feasible = sum(r.feasible for r in reports)
    for r in reports:
        edge = f"{r.edge[0]}:{r.edge[1]}"
        if out.records:
            out.record("support", edge=edge, feasible=r.feasible)
        else:
            out.text(f"{edge} {'feasible' if r.feasible else 'infeasible'}")
    if out.records:
        out.record("summary", feasible=feasible, edges=len(reports))
    else:
        out.text(f"# {feasible}/{len(reports)} edges admit a weight vanishing exactly there")
    return EXIT_OK


def _alpha_notice(drawing, alpha_choice: str) -> str:
    report = figure.alpha_report(drawing)
    printed = format_scalar(figure.FIGURE.alpha_printed)
    corrected = format_scalar(figure.FIGURE.alpha_corrected)
    failing = report["printed"]
    lines = [
        f"note: the printed legend alpha = {printed} does not balance "
        f"({len(failing)} failing rays: {', '.join(failing)});",
        f"note: alpha = {corrected} balances ({'ok' if not report['corrected'] else 'FAILS'}).",
        f"note: using {alpha_choice} alpha = {printed if alpha_choice == 'printed' else corrected}.",
    ]
    return "\n".join(lines)


def cmd_figure(args, out: _Output) -> int:
    icosa = builtin_polytope("icosahedron")
    drawing, dw, legend = figure.panel(icosa, args.panel, args.alpha)
    if args.panel == "right":
        sys.stderr.write(_alpha_notice(drawing, args.alpha) + "\n")
    if args.format == "weight":
        w = figure.transfer_weight(drawing, dw)
        if out.records:
            _weight_record(out, "weight", w, panel=args.panel)
        else:
            out.stream.write(format_weight(w, out.approx))
        return EXIT_OK
    text = figure.emit(drawing, dw, legend, args.format, figure.PANEL_STYLES[args.panel])
    if out.records:
        out.record("figure", panel=args.panel, format=args.format, text=text)
    else:
        out.stream.write(text)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minkweights", description="Exact Minkowski weights on fans over 3-polytopes.")
    parser.add_argument("--records", action="store_true", help="emit one JSON record per line")
    parser.add_argument("--approx", type=int, metavar="N", help="append N-digit decimal hints to scalars")
    parser.add_argument("--lenient", action="store_true", help="warn instead of failing on skeleton diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polytope", help="write a builtin skeleton")
    p.add_argument("name", choices=BUILTIN_NAMES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_polytope)

    for name, func, helptext in (
        ("dim", cmd_dim, "dimension of the balanced weight space"),
        ("basis", cmd_basis, "echelon basis of the balanced weight space"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--skeleton", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="check a weight for balancing")
    p.add_argument("--skeleton", required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve with pinned values and forced zeros")
    p.add_argument("--skeleton", required=True)
    p.add_argument("--pin")
    p.add_argument("--zero", nargs="*", metavar="V1:V2")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan-support", help="which edges admit a weight vanishing exactly there")
    p.add_argument("--skeleton", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("figure", help="emit a panel of the dodecahedral figure")
    p.add_argument("--panel", choices=("left", "right"), required=True)
    p.add_argument("--alpha", choices=("printed", "corrected"), default="corrected")
    p.add_argument("--format", choices=("tikz", "dot", "weight"), default="tikz")
    p.set_defaults(func=cmd_figure)
    return parser


def run_cli(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.approx is not None and args.approx < 1:
        parser.print_usage(sys.stderr)
        sys.stderr.write("error: --approx needs N >= 1\n")
        return EXIT_USAGE
    out = _Output(stdout or sys.stdout, args.records, args.approx)
    try:
        return args.func(args, out)
    except (FormatError, ValidationError, SkeletonError, balance.InvalidSkeleton) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())
