"""The dodecahedral planar presentation of the icosahedron fan, and figure emission.

Drawn nodes are the triangles (maximal cones) of the icosahedron, drawn edges
are its edges (2-cones) and drawn faces are its vertices (rays).  The drawing
has four rings of five nodes::

    O_p  angle 72p      radius 8   triangles containing the axis
    M_p  angle 72p      radius 6   triangles across the axis link
    A_p  angle 72p+36   radius 4
    B_p  angle 72p+36   radius 2   triangles containing the antipode

with drawn edges O_p O_{p+1} (outer), O_p M_p (spoke), M_p A_p and M_p A_{p-1}
(middle), A_p B_p (inner-spoke) and B_{p-1} B_p (inner).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .balance import WeightVector, is_balanced
from .field import QuadraticScalar
from .skeleton import (
    Edge,
    PolytopeSkeleton,
    SkeletonError,
    antipode,
    canonical_edge,
    classify_edges_by_axis,
    link_cycle,
)

RINGS = {"O": (0, 8), "M": (0, 6), "A": (36, 4), "B": (36, 2)}
EDGE_CLASSES = ("outer", "spoke", "middle", "inner-spoke", "inner")

DrawnEdgeKey = tuple[str, str]


@dataclass(frozen=True)
class FigureConstants:
    phi_fig: QuadraticScalar = QuadraticScalar(Fraction(-1, 2), Fraction(1, 2))
    beta: QuadraticScalar = QuadraticScalar(Fraction(1, 2))
    gamma: QuadraticScalar = QuadraticScalar(Fraction(5, 4), Fraction(1, 4))
    alpha_printed: QuadraticScalar = QuadraticScalar(Fraction(3, 2), Fraction(1, 2))
    alpha_corrected: QuadraticScalar = QuadraticScalar(Fraction(3, 4), Fraction(1, 4))

    def alpha(self, choice: str) -> QuadraticScalar:
        if choice == "printed":
            return self.alpha_printed
        if choice == "corrected":
            return self.alpha_corrected
        raise ValueError(f"alpha choice must be 'printed' or 'corrected', got {choice!r}")


FIGURE = FigureConstants()


@dataclass(frozen=True)
class DrawnEdge:
    key: DrawnEdgeKey
    cls: str
    index: int  # p for most classes, 1..10 around the ring for "middle"
    dual: Edge


@dataclass(frozen=True)
class DrawnGraph:
    skeleton: PolytopeSkeleton
    axis: str
    antipode: str
    nodes: dict[str, frozenset[str]]  # node name -> icosahedron triangle
    edges: tuple[DrawnEdge, ...]

    def node_position(self, name: str) -> tuple[float, float]:
        offset, radius = RINGS[name[0]]
        angle = math.radians(72 * int(name[1:]) + offset)
        return radius * math.cos(angle), radius * math.sin(angle)

    def by_key(self) -> dict[DrawnEdgeKey, DrawnEdge]:
        return {e.key: e for e in self.edges}

    def by_dual(self) -> dict[Edge, DrawnEdge]:
        return {e.dual: e for e in self.edges}

    def edge(self, cls: str, index: int) -> DrawnEdge:
        for e in self.edges:
            if e.cls == cls and e.index == index:
                return e
        raise KeyError((cls, index))


def _succ(p: int) -> int:
    return p % 5 + 1


def _pred(p: int) -> int:
    return (p - 2) % 5 + 1


def _common(skeleton: PolytopeSkeleton, a: str, b: str, exclude: str) -> str:
    both = set(skeleton.neighbors(a)) & set(skeleton.neighbors(b))
    both.discard(exclude)
    if len(both) != 1:
        raise SkeletonError("not an icosahedral link structure")
    return both.pop()


def dodecahedral_drawing(icosa: PolytopeSkeleton, axis: str, seed: Sequence[str] | None = None) -> DrawnGraph:
    """Lay out the triangles of ``icosa`` in the four-ring drawing around ``axis``.

    ``seed`` is a triangle containing the axis; it becomes node O1, and the
    remaining O-nodes follow the counterclockwise link cycle of the axis.
    """
    if len(icosa.names) != 12 or len(icosa.edges) != 30 or any(icosa.degree(v) != 5 for v in icosa.names):
        raise SkeletonError("dodecahedral drawing needs an icosahedron")
    south = antipode(icosa, axis)
    cycle = link_cycle(icosa, axis)
    if seed is None:
        u = cycle
    else:
        seed = set(seed)
        if axis not in seed or len(seed) != 3:
            raise SkeletonError(f"seed {sorted(seed)} is not a triangle containing {axis}")
        pair = seed - {axis}
        starts = [k for k in range(5) if {cycle[k], cycle[(k + 1) % 5]} == pair]
        if not starts:
            raise SkeletonError(f"seed {sorted(seed)} is not a triangle of the solid")
        k = starts[0]
        u = cycle[k:] + cycle[:k]
    u = [None] + u  # 1-based
    m = [None] + [_common(icosa, u[p], u[_succ(p)], axis) for p in range(1, 6)]
    if not all(south in icosa.neighbors(m[p]) for p in range(1, 6)) or len(set(m[1:])) != 5:
        raise SkeletonError("not an icosahedral link structure")

    nodes = {}
    for p in range(1, 6):
        q = _succ(p)
        nodes[f"O{p}"] = frozenset((axis, u[p], u[q]))
        nodes[f"M{p}"] = frozenset((u[p], u[q], m[p]))
        nodes[f"A{p}"] = frozenset((u[q], m[p], m[q]))
        nodes[f"B{p}"] = frozenset((south, m[p], m[q]))

    def dual(a: str, b: str) -> Edge:
        shared = nodes[a] & nodes[b]
        if len(shared) != 2:
            raise SkeletonError(f"drawn nodes {a} and {b} do not share an edge")
        return canonical_edge(*shared)

    edges = []
    for p in range(1, 6):
        q, r = _succ(p), _pred(p)
        edges.append(DrawnEdge((f"O{p}", f"O{q}"), "outer", p, dual(f"O{p}", f"O{q}")))
        edges.append(DrawnEdge((f"O{p}", f"M{p}"), "spoke", p, dual(f"O{p}", f"M{p}")))
        edges.append(DrawnEdge((f"A{p}", f"B{p}"), "inner-spoke", p, dual(f"A{p}", f"B{p}")))
        edges.append(DrawnEdge((f"B{r}", f"B{p}"), "inner", p, dual(f"B{r}", f"B{p}")))
        # middle labels run k = 1..10 at angle 36k + 18
        edges.append(DrawnEdge((f"M{p}", f"A{p}"), "middle", 2 * p, dual(f"M{p}", f"A{p}")))
        edges.append(DrawnEdge((f"M{p}", f"A{r}"), "middle", 2 * p - 1, dual(f"M{p}", f"A{r}")))
    edges.sort(key=lambda e: (EDGE_CLASSES.index(e.cls), e.index))
    if sorted(e.dual for e in edges) != list(icosa.edges):
        raise SkeletonError("drawn edges are not in bijection with the solid's edges")
    return DrawnGraph(icosa, axis, south, nodes, tuple(edges))


def drawn_faces(drawing: DrawnGraph) -> list[list[DrawnEdgeKey]]:
    """Faces of the drawn plane graph, traced from the node coordinates.

    The outer face is listed last.
    """
    pos = {n: drawing.node_position(n) for n in drawing.nodes}
    adj: dict[str, list[str]] = {n: [] for n in pos}
    keys = {}
    for e in drawing.edges:
        a, b = e.key
        adj[a].append(b)
        adj[b].append(a)
        keys[frozenset(e.key)] = e.key

    def angle(a: str, b: str) -> float:
        return math.atan2(pos[b][1] - pos[a][1], pos[b][0] - pos[a][0])

    ccw = {n: sorted(nb, key=lambda b, n=n: angle(n, b)) for n, nb in adj.items()}
    seen = set()
    faces = []
    for a in sorted(adj):
        for b in ccw[a]:
            if (a, b) in seen:
                continue
            face = []
            x, y = a, b
            while (x, y) not in seen:
                seen.add((x, y))
                face.append((x, y))
                around = ccw[y]
                # next dart turns as far clockwise as possible: face on the left
                x, y = y, around[(around.index(x) - 1) % len(around)]
            faces.append(face)

    def area(face) -> float:
        return sum(pos[x][0] * pos[y][1] - pos[y][0] * pos[x][1] for x, y in face)

    faces.sort(key=lambda f: area(f) < 0)
    return [[keys[frozenset(d)] for d in f] for f in faces]


def face_ray(drawing: DrawnGraph, face: Sequence[DrawnEdgeKey]) -> str:
    """The icosahedron vertex shared by the duals of all edges of a drawn face."""
    by_key = drawing.by_key()
    common = set(by_key[face[0]].dual)
    for k in face[1:]:
        common &= set(by_key[k].dual)
    if len(common) != 1:
        raise SkeletonError("drawn face does not correspond to a ray")
    return common.pop()


# -- weights -----------------------------------------------------------------


def figure_left_weight(icosa: PolytopeSkeleton, axis: str) -> WeightVector:
    classes = classify_edges_by_axis(icosa, axis)
    value = {
        "polar-N": QuadraticScalar(1),
        "polar-S": QuadraticScalar(1),
        "ring-N": QuadraticScalar(0),
        "ring-S": QuadraticScalar(0),
        "equatorial": FIGURE.phi_fig,
    }
    mapping = {e: value[cls] for cls, es in classes.items() for e in es}
    return WeightVector.from_mapping(icosa, mapping)


def right_panel_drawn_weight(alpha_choice: str = "corrected") -> dict[tuple[str, int], QuadraticScalar]:
    """Labels of the one-edge-vanishing panel keyed by ``(class, index)``."""
    one, zero = QuadraticScalar(1), QuadraticScalar(0)
    alpha, beta, gamma = FIGURE.alpha(alpha_choice), FIGURE.beta, FIGURE.gamma
    labels: dict[tuple[str, int], QuadraticScalar] = {}
    for p in range(1, 6):
        labels["outer", p] = one
        labels["spoke", p] = gamma if p == 5 else one
        labels["inner-spoke", p] = gamma if p <= 3 else alpha
    for k in range(1, 11):
        labels["middle", k] = one
    labels["middle", 1] = gamma  # M1 A5
    labels["middle", 8] = gamma  # M4 A4
    labels["middle", 9] = beta  # M5 A4
    labels["middle", 10] = beta  # M5 A5
    for p, v in zip(range(1, 6), (alpha, beta, beta, alpha, zero)):
        labels["inner", p] = v
    return labels


def _by_class(drawing: DrawnGraph, labels: Mapping[tuple[str, int], QuadraticScalar]) -> dict[DrawnEdgeKey, QuadraticScalar]:
    return {drawing.edge(cls, k).key: v for (cls, k), v in labels.items()}


def figure_right_weight(drawing: DrawnGraph, alpha_choice: str = "corrected") -> WeightVector:
    return transfer_weight(drawing, _by_class(drawing, right_panel_drawn_weight(alpha_choice)))


def transfer_weight(drawing: DrawnGraph, dw: Mapping[DrawnEdgeKey, object]) -> WeightVector:
    by_key = drawing.by_key()
    missing = set(by_key) - set(dw)
    if missing:
        raise KeyError(f"drawn weight is missing edges: {sorted(missing)}")
    return WeightVector.from_mapping(drawing.skeleton, {by_key[k].dual: v for k, v in dw.items()})


def drawn_weight(drawing: DrawnGraph, weight: WeightVector) -> dict[DrawnEdgeKey, QuadraticScalar]:
    values = weight.as_dict()
    return {e.key: values[e.dual] for e in drawing.edges}


def alpha_report(drawing: DrawnGraph) -> dict[str, list[str]]:
    """Failing rays of the right panel under each alpha choice."""
    return {
        choice: is_balanced(drawing.skeleton, figure_right_weight(drawing, choice)).failing_vertices
        for choice in ("printed", "corrected")
    }


# -- emission ----------------------------------------------------------------


def tex_scalar(x: QuadraticScalar) -> str:
    """TeX for ``(p + q sqrt d) / c``, e.g. ``\\frac{\\sqrt{5}-1}{2}``."""
    c = x.a.denominator * x.b.denominator // math.gcd(x.a.denominator, x.b.denominator)
    p, q = int(x.a * c), int(x.b * c)
    root = f"\\sqrt{{{x.radicand}}}"

    def numerator(p: int, q: int) -> str:
        rad = root if abs(q) == 1 else f"{abs(q)}{root}"
        if q == 0:
            return str(p)
        if p == 0:
            return ("-" if q < 0 else "") + rad
        if p < 0 < q:
            return f"{rad}-{-p}"
        return f"{p}{'+' if q > 0 else '-'}{rad}"

    if c == 1:
        return numerator(p, q)
    if p <= 0 and q <= 0:
        return f"-\\frac{{{numerator(-p, -q)}}}{{{c}}}"
    return f"\\frac{{{numerator(p, q)}}}{{{c}}}"


def label_text(value: QuadraticScalar, legend: Sequence[tuple[str, QuadraticScalar]]) -> str:
    for name, v in legend:
        if v == value:
            return f"${_tex_name(name)}$"
    if value.is_rational() and value.a.denominator == 1:
        return str(value.a.numerator)
    return f"${tex_scalar(value)}$"


def _tex_name(name: str) -> str:
    return name if name.startswith("\\") or len(name) == 1 else f"\\{name}"


def describe_vanishing(count: int) -> list[str]:
    if count == 1:
        return ["A Minkowski weight vanishing", "on exactly one edge."]
    return [f"A Minkowski weight vanishing on {count} edges."]


# label slot per class: (angle expression with \p, radius)
_LABEL_SLOTS = {
    "outer": ("\\p*72+36", "6.8", "{p}*72+36"),
    "spoke": ("\\p*72+4", "7", "{p}*72+4"),
    "middle": ("\\p*36+18", "5", "{p}*36+18"),
    "inner-spoke": ("\\p*72+43", "3", "{p}*72+43"),
    "inner": ("\\p*72", "1.3", "{p}*72"),
}


def _index_list(run: list[int]) -> str:
    if len(run) >= 4:
        return f"{run[0]},{run[1]},...,{run[-1]}"
    return ",".join(str(k) for k in run)


def _label_lines(cls: str, values: dict[int, str]) -> list[str]:
    """Group equal labels into contiguous runs; runs become foreach loops."""
    expr, radius, single = _LABEL_SLOTS[cls]
    runs: list[tuple[str, list[int]]] = []
    for k in sorted(values):
        if runs and runs[-1][0] == values[k] and runs[-1][1][-1] == k - 1:
            runs[-1][1].append(k)
        else:
            runs.append((values[k], [k]))
    lines = []
    for text, run in runs:
        if len(run) == 1:
            lines.append(f"    \\node[red] at ({single.format(p=run[0])}:{radius}) {{{text}}};")
        else:
            lines.append(f"    \\foreach \\p in {{{_index_list(run)}}}")
            lines.append(f"        \\node[red] at ({expr}:{radius}) {{{text}}};")
    return lines


@dataclass(frozen=True)
class PanelStyle:
    xshift: str


PANEL_STYLES = {"left": PanelStyle("-3cm"), "right": PanelStyle("3.5cm")}


def _legend_lines(legend: Sequence[tuple[str, QuadraticScalar]]) -> list[str]:
    entries = [f"${_tex_name(n)}={tex_scalar(v)}$" for n, v in legend]
    if not entries:
        return []
    if len(entries) == 1:
        return [
            "\\begin{scope}[xshift=-5cm,yshift=7cm, scale=2]",
            f" \\node at (0,0) {{{entries[0]}}};",
            " \\draw (-1,-.5)--(-1,.5)--(1,.5)--(1,-.5)--cycle;",
            "\\end{scope}",
        ]
    top = Fraction(3, 2) * Fraction(len(entries) - 1, 2)
    half = top + 1
    lines = ["\\begin{scope}[xshift=5.7cm,yshift=6.5cm]"]
    for i, text in enumerate(entries):
        lines.append(f" \\node[right] at (0,{_num(top - Fraction(3, 2) * i)}) {{{text}}};")
    h = _num(half)
    lines.append(f" \\draw (0,-{h})--(0,{h})--(4.2,{h})--(4.2,-{h})--cycle;")
    lines.append("\\end{scope}")
    return lines


def _num(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else str(float(f))


def emit_tikz(
    drawing: DrawnGraph,
    dw: Mapping[DrawnEdgeKey, QuadraticScalar],
    legend: Sequence[tuple[str, QuadraticScalar]],
    style: PanelStyle = PANEL_STYLES["left"],
) -> str:
    by_key = drawing.by_key()
    labels: dict[str, dict[int, str]] = {c: {} for c in EDGE_CLASSES}
    for key, value in dw.items():
        e = by_key[key]
        labels[e.cls][e.index] = label_text(value, legend)
    vanishing = sum(1 for v in dw.values() if not v)

    out = ["\\begin{tikzpicture}", "", "", f"\\begin{{scope}}[xshift={style.xshift}, scale=0.4]"]
    caption = describe_vanishing(vanishing)
    for i, line in enumerate(caption):
        y = "-9" if i == 0 else f"{_num(-9 - Fraction(4, 5) * i)}"
        out.append(f"\\node at (0,{y}) {{{line}}};")
    out.append("")
    for offset, radius in ((0, 8), (0, 6), (36, 4), (36, 2)):
        angle = "\\p*72" if offset == 0 else f"\\p*72+{offset}"
        out.append("    \\foreach \\p in {1,2,...,5}")
        out.append(f"    \t\\draw[fill=black] ({angle}:{radius}) circle (.05);")
    out.append("")
    out.append("     \\foreach \\p in {1,2,...,5}")
    out.append(
        "    \t\\draw (\\p*72:8)--(\\p*72+72:8) (\\p*72:8)--(\\p*72:6) (\\p*72:6)--(\\p*72+36:4)"
        " (\\p*72:6)--(\\p*72-36:4) (\\p*72+36:4)--(\\p*72+36:2) (\\p*72+36:2)--(\\p*72-36:2);"
    )
    out.append("")
    for cls in EDGE_CLASSES:
        out.extend(_label_lines(cls, labels[cls]))
    out.append("")
    out.extend(_legend_lines(legend))
    out.append("\\end{scope}")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def emit_dot(
    drawing: DrawnGraph,
    dw: Mapping[DrawnEdgeKey, QuadraticScalar],
    legend: Sequence[tuple[str, QuadraticScalar]],
) -> str:
    from .field import format_scalar

    def node_order(n: str) -> tuple[int, int]:
        return ("OMAB".index(n[0]), int(n[1:]))

    out = ["graph dodecahedral {", "  node [shape=point];"]
    for n in sorted(drawing.nodes, key=node_order):
        x, y = drawing.node_position(n)
        out.append(f'  {n} [pos="{x:.4f},{y:.4f}!"];')
    for e in drawing.edges:
        value = dw[e.key]
        text = label_text(value, legend).strip("$")
        dual = f"{e.dual[0]}:{e.dual[1]}"
        out.append(
            f'  {e.key[0]} -- {e.key[1]} [label="{text}", value="{format_scalar(value)}", dual="{dual}", class="{e.cls}"];'
        )
    for name, v in legend:
        out.append(f'  // {name} = {format_scalar(v)}')
    out.append("}")
    return "\n".join(out).replace("-0.0000", "0.0000") + "\n"


def emit(
    drawing: DrawnGraph,
    dw: Mapping[DrawnEdgeKey, QuadraticScalar],
    legend: Sequence[tuple[str, QuadraticScalar]],
    fmt: str = "tikz",
    style: PanelStyle = PANEL_STYLES["left"],
) -> str:
    if fmt == "tikz":
        return emit_tikz(drawing, dw, legend, style)
    if fmt == "dot":
        return emit_dot(drawing, dw, legend)
    raise ValueError(f"unknown format {fmt!r}")


def panel(icosa: PolytopeSkeleton, which: str, alpha_choice: str = "corrected", axis: str | None = None):
    """Drawing, drawn weight and legend for one panel of the figure."""
    axis = axis or icosa.names[0]
    drawing = dodecahedral_drawing(icosa, axis)
    if which == "left":
        dw = drawn_weight(drawing, figure_left_weight(icosa, axis))
        legend = [("phi", FIGURE.phi_fig)]
    elif which == "right":
        dw = _by_class(drawing, right_panel_drawn_weight(alpha_choice))
        legend = [("alpha", FIGURE.alpha(alpha_choice)), ("beta", FIGURE.beta), ("gamma", FIGURE.gamma)]
    else:
        raise ValueError(f"unknown panel {which!r}")
    return drawing, dw, legend


def emit_panel(icosa: PolytopeSkeleton, which: str, fmt: str = "tikz", alpha_choice: str = "corrected") -> str:
    drawing, dw, legend = panel(icosa, which, alpha_choice)
    return emit(drawing, dw, legend, fmt, PANEL_STYLES[which])
