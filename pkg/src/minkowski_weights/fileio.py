"""Line-oriented text formats for skeletons and weights.

Skeleton file::

    field sqrt5
    v <name> <x> <y> <z>
    e <name1> <name2>          (or a single ``autoedges <d2>`` line)
    f <name1> <name2> ...      (optional face cycles)

Weight / pin file::

    default 0                  (optional; fills unlisted edges with zero)
    w <name1> <name2> <scalar>

``#`` starts a comment.  Coordinates are single tokens of the scalar grammar
(``1/2+1/2r5``); a weight's scalar is the rest of its line.
"""

from __future__ import annotations

import re
import warnings
from pathlib import Path
from typing import Iterator

from .balance import WeightVector
from .field import DEFAULT_RADICAND, QuadraticScalar, ScalarParseError, format_scalar, parse_scalar
from .skeleton import Edge, PolytopeSkeleton, canonical_edge, edges_from_squared_distance, validate

_NAME = re.compile(r"[A-Za-z0-9_.+\-]+$")


class FormatError(ValueError):
    def __init__(self, message: str, path: str | None = None, line: int = 0, column: int = 0) -> None:
        where = f"{path or '<input>'}:{line}:{column}" if line else (path or "<input>")
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
        self.column = column


class ValidationError(ValueError):
    def __init__(self, diagnostics: list[str], path: str | None = None) -> None:
        super().__init__(f"{path or '<input>'}: invalid skeleton: " + "; ".join(diagnostics))
        self.diagnostics = diagnostics


def _lines(text: str) -> Iterator[tuple[int, str, list[tuple[int, str]]]]:
    """Yield ``(line number, raw line, [(column, token), ...])`` for non-blank lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if tokens:
            yield lineno, raw, tokens


def _scalar(token: str, radicand: int, path: str | None, lineno: int, column: int) -> QuadraticScalar:
    try:
        return parse_scalar(token, radicand)
    except ScalarParseError as exc:
        raise FormatError(f"bad scalar {token!r}: {exc}", path, lineno, column + exc.position) from None


def _name(token: str, path: str | None, lineno: int, column: int) -> str:
    if not _NAME.match(token):
        raise FormatError(f"bad vertex name {token!r}", path, lineno, column)
    return token


def _field_header(tokens, path, lineno) -> int:
    if len(tokens) != 2 or not re.fullmatch(r"sqrt\d+", tokens[1][1]):
        raise FormatError("expected 'field sqrtN'", path, lineno, tokens[0][0])
    return int(tokens[1][1][4:])


def parse_skeleton(text: str, path: str | None = None, strict: bool = True) -> PolytopeSkeleton:
    radicand = DEFAULT_RADICAND
    seen_field = False
    names: list[str] = []
    positions = []
    edges: list[Edge] = []
    faces: list[tuple[str, ...]] = []
    autoedges: tuple[QuadraticScalar, int] | None = None
    for lineno, _, tokens in _lines(text):
        kw = tokens[0][1]
        if kw == "field":
            if seen_field or names:
                raise FormatError("'field' must be the first directive", path, lineno, tokens[0][0])
            radicand = _field_header(tokens, path, lineno)
            seen_field = True
        elif kw == "v":
            if len(tokens) != 5:
                raise FormatError("expected 'v <name> <x> <y> <z>'", path, lineno, tokens[0][0])
            names.append(_name(tokens[1][1], path, lineno, tokens[1][0]))
            positions.append(tuple(_scalar(t, radicand, path, lineno, c) for c, t in tokens[2:]))
        elif kw == "e":
            if len(tokens) != 3:
                raise FormatError("expected 'e <name1> <name2>'", path, lineno, tokens[0][0])
            a = _name(tokens[1][1], path, lineno, tokens[1][0])
            b = _name(tokens[2][1], path, lineno, tokens[2][0])
            for col, n in ((tokens[1][0], a), (tokens[2][0], b)):
                if n not in names:
                    raise FormatError(f"edge references unknown vertex {n!r}", path, lineno, col)
            if a == b:
                raise FormatError(f"edge endpoints coincide: {a}", path, lineno, tokens[1][0])
            edges.append(canonical_edge(a, b))
        elif kw == "autoedges":
            if len(tokens) != 2:
                raise FormatError("expected 'autoedges <d2>'", path, lineno, tokens[0][0])
            autoedges = (_scalar(tokens[1][1], radicand, path, lineno, tokens[1][0]), lineno)
        elif kw == "f":
            faces.append(tuple(_name(t, path, lineno, c) for c, t in tokens[1:]))
        else:
            raise FormatError(f"unknown directive {kw!r}", path, lineno, tokens[0][0])
    if not seen_field:
        raise FormatError("missing 'field sqrtN' header", path)
    skeleton = PolytopeSkeleton(tuple(names), tuple(positions), tuple(edges), tuple(faces), radicand)
    if autoedges is not None:
        if edges:
            raise FormatError("'autoedges' cannot be combined with 'e' lines", path, autoedges[1], 1)
        if autoedges[0].sign() <= 0:
            raise FormatError("'autoedges' needs a positive squared distance", path, autoedges[1], 1)
        skeleton = skeleton.with_edges(edges_from_squared_distance(skeleton, autoedges[0]))
    diagnostics = validate(skeleton)
    if diagnostics:
        if strict:
            raise ValidationError(diagnostics, path)
        for d in diagnostics:
            warnings.warn(f"{path or '<input>'}: {d}", stacklevel=2)
    return skeleton


def format_skeleton(skeleton: PolytopeSkeleton) -> str:
    out = [f"field sqrt{skeleton.radicand}"]
    for n, p in zip(skeleton.names, skeleton.positions):
        out.append(f"v {n} " + " ".join(format_scalar(x) for x in p))
    for a, b in skeleton.edges:
        out.append(f"e {a} {b}")
    for f in skeleton.faces:
        out.append("f " + " ".join(f))
    return "\n".join(out) + "\n"


def read_skeleton(path: str | Path, strict: bool = True) -> PolytopeSkeleton:
    return parse_skeleton(Path(path).read_text(encoding="utf-8"), str(path), strict)


def write_skeleton(skeleton: PolytopeSkeleton, path: str | Path) -> None:
    Path(path).write_text(format_skeleton(skeleton), encoding="utf-8")


# -- weights -----------------------------------------------------------------


def parse_assignments(
    text: str, skeleton: PolytopeSkeleton, path: str | None = None
) -> tuple[dict[Edge, QuadraticScalar], bool]:
    """Parse ``w`` lines into a partial edge map; also report whether ``default 0`` was given."""
    values: dict[Edge, QuadraticScalar] = {}
    default_zero = False
    for lineno, raw, tokens in _lines(text):
        kw = tokens[0][1]
        if kw == "default":
            if len(tokens) != 2 or tokens[1][1] != "0":
                raise FormatError("only 'default 0' is supported", path, lineno, tokens[0][0])
            default_zero = True
        elif kw == "field":
            if _field_header(tokens, path, lineno) != skeleton.radicand:
                raise FormatError("field does not match the skeleton", path, lineno, tokens[1][0])
        elif kw == "w":
            if len(tokens) < 4:
                raise FormatError("expected 'w <name1> <name2> <scalar>'", path, lineno, tokens[0][0])
            a, b = tokens[1][1], tokens[2][1]
            if a == b or not skeleton.has_edge(a, b):
                raise FormatError(f"unknown edge {a}:{b}", path, lineno, tokens[1][0])
            edge = canonical_edge(a, b)
            if edge in values:
                raise FormatError(f"edge {edge[0]}:{edge[1]} assigned twice", path, lineno, tokens[1][0])
            column = tokens[3][0]
            body = raw.split("#", 1)[0]
            values[edge] = _scalar(body[column - 1 :].strip(), skeleton.radicand, path, lineno, column)
        else:
            raise FormatError(f"unknown directive {kw!r}", path, lineno, tokens[0][0])
    return values, default_zero


def parse_weight(text: str, skeleton: PolytopeSkeleton, path: str | None = None) -> WeightVector:
    values, default_zero = parse_assignments(text, skeleton, path)
    missing = [e for e in skeleton.edges if e not in values]
    if missing and not default_zero:
        names = ", ".join(f"{a}:{b}" for a, b in missing)
        raise FormatError(f"missing edges without 'default 0': {names}", path)
    zero = QuadraticScalar(0, 0, skeleton.radicand)
    return WeightVector(skeleton.edges, [values.get(e, zero) for e in skeleton.edges])


def format_weight(weight: WeightVector, approx: int | None = None) -> str:
    from .field import to_float

    out = []
    for (a, b), v in weight.items():
        line = f"w {a} {b} {format_scalar(v)}"
        if approx:
            line += f"  # ~{to_float(v, approx)}"
        out.append(line)
    return "\n".join(out) + "\n"


def read_weight(path: str | Path, skeleton: PolytopeSkeleton) -> WeightVector:
    return parse_weight(Path(path).read_text(encoding="utf-8"), skeleton, str(path))


def write_weight(weight: WeightVector, path: str | Path) -> None:
    Path(path).write_text(format_weight(weight), encoding="utf-8")


def read_pins(path: str | Path, skeleton: PolytopeSkeleton) -> dict[Edge, QuadraticScalar]:
    values, _ = parse_assignments(Path(path).read_text(encoding="utf-8"), skeleton, str(path))
    return values


def parse_edge_ref(text: str, skeleton: PolytopeSkeleton) -> Edge:
    a, sep, b = text.partition(":")
    if not sep or not skeleton.has_edge(a, b):
        raise FormatError(f"unknown edge {text!r}")
    return canonical_edge(a, b)
