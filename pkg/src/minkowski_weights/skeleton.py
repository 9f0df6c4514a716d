"""Polytope 1-skeletons with exact coordinates.

The rays of the fan are the raw vertex position vectors and its 2-cones are the
edges.  Edges are stored as name pairs ``(a, b)`` with ``a < b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations, product
from typing import Iterable, Sequence

from .field import DEFAULT_RADICAND, QuadraticScalar, golden_ratio

Vector = tuple[QuadraticScalar, QuadraticScalar, QuadraticScalar]
Edge = tuple[str, str]


class SkeletonError(ValueError):
    pass


# -- small exact vector helpers ----------------------------------------------


def vec(*xs, radicand: int = DEFAULT_RADICAND) -> Vector:
    return tuple(x if isinstance(x, QuadraticScalar) else QuadraticScalar(x, 0, radicand) for x in xs)


def add(u: Vector, v: Vector) -> Vector:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u: Vector, v: Vector) -> Vector:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def scale(t, v: Vector) -> Vector:
    return (t * v[0], t * v[1], t * v[2])


def neg(v: Vector) -> Vector:
    return (-v[0], -v[1], -v[2])


def dot(u: Vector, v: Vector) -> QuadraticScalar:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Vector, v: Vector) -> Vector:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u: Vector, v: Vector, w: Vector) -> QuadraticScalar:
    return dot(u, cross(v, w))


def is_zero(v: Vector) -> bool:
    return not (v[0] or v[1] or v[2])


def canonical_edge(a: str, b: str) -> Edge:
    if a == b:
        raise SkeletonError(f"edge endpoints coincide: {a}")
    return (a, b) if a < b else (b, a)


# -- skeleton ----------------------------------------------------------------


@dataclass(frozen=True)
class PolytopeSkeleton:
    """Vertex names with exact positions, a canonical edge list and optional faces.

    Construction canonicalizes edge orientation and sorts edges; it does not
    reject invalid data (see :func:`validate`).
    """

    names: tuple[str, ...]
    positions: tuple[Vector, ...]
    edges: tuple[Edge, ...] = ()
    faces: tuple[tuple[str, ...], ...] = ()
    radicand: int = DEFAULT_RADICAND
    _index: dict = field(init=False, repr=False, compare=False)
    _neighbors: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        edges = tuple(sorted(canonical_edge(a, b) for a, b in self.edges))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "positions", tuple(tuple(p) for p in self.positions))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "faces", tuple(tuple(f) for f in self.faces))
        if len(self.positions) != len(names):
            raise SkeletonError("names and positions differ in length")
        index: dict[str, int] = {}
        for i, n in enumerate(names):
            index.setdefault(n, i)
        nbrs: dict[str, list[str]] = {n: [] for n in names}
        for a, b in edges:
            if a not in index or b not in index:
                raise SkeletonError(f"edge {a}:{b} references an unknown vertex")
            if b not in nbrs[a]:
                nbrs[a].append(b)
                nbrs[b].append(a)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_neighbors", {n: tuple(sorted(v)) for n, v in nbrs.items()})

    @classmethod
    def from_vertices(cls, vertices: Iterable[tuple[str, Vector]], edges: Iterable[Edge] = (), **kw) -> PolytopeSkeleton:
        vertices = list(vertices)
        return cls(tuple(n for n, _ in vertices), tuple(p for _, p in vertices), tuple(edges), **kw)

    def with_edges(self, edges: Iterable[Edge]) -> PolytopeSkeleton:
        return PolytopeSkeleton(self.names, self.positions, tuple(edges), self.faces, self.radicand)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SkeletonError(f"unknown vertex {name!r}") from None

    def position(self, name: str) -> Vector:
        return self.positions[self.index(name)]

    def neighbors(self, name: str) -> tuple[str, ...]:
        self.index(name)
        return self._neighbors[name]

    def degree(self, name: str) -> int:
        return len(self.neighbors(name))

    def incident_edges(self, name: str) -> list[Edge]:
        return [canonical_edge(name, w) for w in self.neighbors(name)]

    def has_edge(self, a: str, b: str) -> bool:
        return a in self._neighbors and b in self._neighbors[a]

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def vertex_at(self, position: Vector) -> str | None:
        for n, p in zip(self.names, self.positions):
            if p == tuple(position):
                return n
        return None

    def triangles(self) -> list[tuple[str, str, str]]:
        """All 3-cliques of the edge graph, sorted."""
        out = []
        for a, b in self.edges:
            for c in self._neighbors[b]:
                if c > b and self.has_edge(a, c):
                    out.append((a, b, c))
        return sorted(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolytopeSkeleton):
            return NotImplemented
        return (self.names, self.positions, self.edges, self.faces, self.radicand) == (
            other.names,
            other.positions,
            other.edges,
            other.faces,
            other.radicand,
        )

    def __hash__(self) -> int:
        return hash((self.names, self.edges))


def edges_from_squared_distance(skeleton: PolytopeSkeleton, d2: QuadraticScalar) -> list[Edge]:
    d2 = d2 if isinstance(d2, QuadraticScalar) else QuadraticScalar(d2, 0, skeleton.radicand)
    if d2.sign() <= 0:
        raise ValueError("squared distance must be positive")
    found = []
    for (na, pa), (nb, pb) in combinations(zip(skeleton.names, skeleton.positions), 2):
        diff = sub(pa, pb)
        if dot(diff, diff) == d2:
            found.append(canonical_edge(na, nb))
    return sorted(found)


# -- builtin solids ----------------------------------------------------------


def _cyclic(v: Sequence) -> list[tuple]:
    return [(v[0], v[1], v[2]), (v[2], v[0], v[1]), (v[1], v[2], v[0])]


def _signed(v: Sequence) -> list[tuple]:
    """All sign patterns on the nonzero entries, without duplicates, in a fixed order."""
    out = []
    for signs in product((1, -1), repeat=3):
        w = tuple(s * x for s, x in zip(signs, v))
        if w not in out:
            out.append(w)
    return out


def _named(points: list[tuple]) -> list[tuple[str, Vector]]:
    width = len(str(len(points)))
    return [(f"v{i:0{width}d}", vec(*p)) for i, p in enumerate(points, start=1)]


def _builtin_points(name: str) -> tuple[list[tuple], QuadraticScalar]:
    if name == "tetrahedron":
        return [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], QuadraticScalar(8)
    if name == "cube":
        return [tuple(p) for p in product((1, -1), repeat=3)], QuadraticScalar(4)
    if name == "octahedron":
        pts = []
        for s in (1, -1):
            pts += [(s, 0, 0), (0, s, 0), (0, 0, s)]
        return pts, QuadraticScalar(2)
    phi = golden_ratio()
    if name == "icosahedron":
        pts = []
        for w in _signed((0, 1, phi)):
            pts += _cyclic(w)
        return pts, QuadraticScalar(4)
    if name == "dodecahedron":
        pts = [tuple(p) for p in product((1, -1), repeat=3)]
        for w in _signed((0, 1 / phi, phi)):
            pts += _cyclic(w)
        # edge length is 2/phi
        return pts, (2 / phi) ** 2
    raise SkeletonError(f"unknown polytope {name!r}")


BUILTIN_NAMES = ("tetrahedron", "cube", "octahedron", "icosahedron", "dodecahedron")


def builtin_polytope(name: str) -> PolytopeSkeleton:
    points, d2 = _builtin_points(name)
    bare = PolytopeSkeleton.from_vertices(_named(points))
    return bare.with_edges(edges_from_squared_distance(bare, d2))


# -- geometric queries -------------------------------------------------------


def link_cycle(skeleton: PolytopeSkeleton, v: str) -> list[str]:
    """Neighbors of ``v`` in counterclockwise order seen from the tip of its ray.

    The cycle starts at the smallest neighbor name.  All tests are exact
    orientation signs of 3x3 determinants.
    """
    r = skeleton.position(v)
    nbrs = list(skeleton.neighbors(v))
    if len(nbrs) < 2:
        return nbrs
    rr = dot(r, r)

    def perp(w: str) -> Vector:
        p = skeleton.position(w)
        return sub(scale(rr, p), scale(dot(p, r), r))

    projections = {w: perp(w) for w in nbrs}
    for w, p in projections.items():
        if is_zero(p):
            raise SkeletonError(f"neighbor {w} of {v} is collinear with its ray")
    if all(det3(r, projections[a], projections[b]).sign() == 0 for a, b in combinations(nbrs, 2)):
        raise SkeletonError(f"degenerate link at {v}: neighbors are coplanar with the ray")

    ref = nbrs[0]
    pr = projections[ref]

    def half(w: str) -> int:
        # 0: the reference direction, 1: open upper half, 2: opposite direction, 3: open lower half
        s = det3(r, pr, projections[w]).sign()
        if s > 0:
            return 1
        if s < 0:
            return 3
        return 0 if dot(pr, projections[w]).sign() > 0 else 2

    def compare(a: str, b: str) -> int:
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        s = det3(r, projections[a], projections[b]).sign()
        if s == 0:
            raise SkeletonError(f"neighbors {a} and {b} of {v} lie on a common half-plane")
        return -s

    cycle = sorted(nbrs, key=cmp_to_key(compare))
    start = cycle.index(min(cycle))
    return cycle[start:] + cycle[:start]


def antipode(skeleton: PolytopeSkeleton, v: str) -> str:
    name = skeleton.vertex_at(neg(skeleton.position(v)))
    if name is None:
        raise SkeletonError(f"no vertex at the antipode of {v}")
    return name


EDGE_CLASSES = ("polar-N", "ring-N", "equatorial", "ring-S", "polar-S")


def classify_edges_by_axis(skeleton: PolytopeSkeleton, n: str) -> dict[str, list[Edge]]:
    s = antipode(skeleton, n)
    north = set(skeleton.neighbors(n))
    south = set(skeleton.neighbors(s))
    classes: dict[str, list[Edge]] = {k: [] for k in EDGE_CLASSES}
    for e in skeleton.edges:
        a, b = e
        if n in e:
            classes["polar-N"].append(e)
        elif s in e:
            classes["polar-S"].append(e)
        elif a in north and b in north:
            classes["ring-N"].append(e)
        elif a in south and b in south:
            classes["ring-S"].append(e)
        else:
            classes["equatorial"].append(e)
    return classes


def validate(skeleton: PolytopeSkeleton) -> list[str]:
    diags = []
    seen_names: set[str] = set()
    for n in skeleton.names:
        if n in seen_names:
            diags.append(f"duplicate vertex name: {n}")
        seen_names.add(n)
    seen_pos: dict[Vector, str] = {}
    for n, p in zip(skeleton.names, skeleton.positions):
        if is_zero(p):
            diags.append(f"zero ray: {n}")
        if p in seen_pos:
            diags.append(f"duplicate ray: {seen_pos[p]} and {n}")
        else:
            seen_pos[p] = n
    for a, b in zip(skeleton.edges, skeleton.edges[1:]):
        if a == b:
            diags.append(f"duplicate edge: {a[0]}:{a[1]}")
    for face in skeleton.faces:
        for a, b in zip(face, face[1:] + face[:1]):
            if a not in skeleton._index or b not in skeleton._index:
                diags.append(f"dangling face reference: {a}:{b}")
            elif not skeleton.has_edge(a, b):
                diags.append(f"dangling face reference: {a}:{b}")
    return diags


# -- symmetries --------------------------------------------------------------


def _solve3(cols: Sequence[Vector], rhs_cols: Sequence[Vector]) -> list[list[QuadraticScalar]] | None:
    """Matrix M with M @ cols[i] == rhs_cols[i], or None when ``cols`` is singular."""
    u, v, w = cols
    d = det3(u, v, w)
    if not d:
        return None
    # rows of the inverse of [u v w] are the scaled cross products
    inv_rows = [scale(1 / d, cross(v, w)), scale(1 / d, cross(w, u)), scale(1 / d, cross(u, v))]
    return [
        [sum((rhs_cols[k][i] * inv_rows[k][j] for k in range(3)), QuadraticScalar(0, 0, d.radicand)) for j in range(3)]
        for i in range(3)
    ]


def _apply(m: list[list[QuadraticScalar]], v: Vector) -> Vector:
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))


def linear_symmetry(skeleton: PolytopeSkeleton, src: Sequence[str], dst: Sequence[str]) -> dict[str, str]:
    """Vertex permutation induced by the linear map sending rays ``src`` to rays ``dst``.

    Raises :class:`SkeletonError` when the map does not permute the vertices
    or does not preserve edges.
    """
    m = _solve3([skeleton.position(x) for x in src], [skeleton.position(x) for x in dst])
    if m is None:
        raise SkeletonError("source rays are linearly dependent")
    perm = {}
    for n, p in zip(skeleton.names, skeleton.positions):
        image = skeleton.vertex_at(_apply(m, p))
        if image is None:
            raise SkeletonError(f"map does not send vertex {n} to a vertex")
        perm[n] = image
    if len(set(perm.values())) != len(perm):
        raise SkeletonError("map is not a bijection on vertices")
    edge_permutation(skeleton, perm)
    return perm


def edge_permutation(skeleton: PolytopeSkeleton, vertex_perm: dict[str, str]) -> dict[Edge, Edge]:
    out = {}
    for a, b in skeleton.edges:
        image = canonical_edge(vertex_perm[a], vertex_perm[b])
        if not skeleton.has_edge(*image):
            raise SkeletonError(f"permutation sends edge {a}:{b} to a non-edge")
        out[(a, b)] = image
    if len(set(out.values())) != len(out):
        raise SkeletonError("permutation is not a bijection on edges")
    return out


def axis_rotation(skeleton: PolytopeSkeleton, axis: str) -> dict[str, str]:
    """Smallest positive rotation about ``axis`` shifting its link cycle by one."""
    cycle = link_cycle(skeleton, axis)
    return linear_symmetry(skeleton, (axis, cycle[0], cycle[1]), (axis, cycle[1], cycle[2 % len(cycle)]))


def axis_reflection(skeleton: PolytopeSkeleton, axis: str) -> dict[str, str]:
    """Reflection fixing ``axis`` that swaps the first two link-cycle neighbors."""
    cycle = link_cycle(skeleton, axis)
    return linear_symmetry(skeleton, (axis, cycle[0], cycle[1]), (axis, cycle[1], cycle[0]))
