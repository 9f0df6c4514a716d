"""Balancing conditions for codimension-one weights on the fan over a 3-polytope.

A weight ``c`` on the edges is balanced at the ray ``r_v`` when
``sum(c(vw) * r_w for w ~ v)`` is parallel to ``r_v``.  This is encoded as the
vanishing of the cross product of that sum with ``r_v``: three linear rows per
vertex, of rank at most two.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import linalg
from .field import QuadraticScalar
from .skeleton import (
    Edge,
    PolytopeSkeleton,
    Vector,
    add,
    canonical_edge,
    cross,
    edge_permutation,
    is_zero,
    scale,
    validate,
)


class InvalidSkeleton(ValueError):
    pass


class WeightVector:
    """An exact scalar on every edge of a skeleton, in canonical edge order."""

    __slots__ = ("edges", "values")

    def __init__(self, edges: Sequence[Edge], values: Sequence[QuadraticScalar]) -> None:
        if len(edges) != len(values):
            raise ValueError("edge and value counts differ")
        self.edges = tuple(edges)
        self.values = tuple(values)

    @classmethod
    def from_mapping(cls, skeleton: PolytopeSkeleton, mapping: Mapping[Edge, object]) -> WeightVector:
        canon = {canonical_edge(*e): v for e, v in mapping.items()}
        unknown = set(canon) - set(skeleton.edges)
        if unknown:
            raise KeyError(f"not edges of the skeleton: {sorted(unknown)}")
        missing = [e for e in skeleton.edges if e not in canon]
        if missing:
            raise KeyError(f"weight is missing edges: {missing}")
        return cls(skeleton.edges, [_as_scalar(canon[e], skeleton.radicand) for e in skeleton.edges])

    @classmethod
    def constant(cls, skeleton: PolytopeSkeleton, value: object = 1) -> WeightVector:
        v = _as_scalar(value, skeleton.radicand)
        return cls(skeleton.edges, [v] * len(skeleton.edges))

    @classmethod
    def zero(cls, skeleton: PolytopeSkeleton) -> WeightVector:
        return cls.constant(skeleton, 0)

    def __getitem__(self, edge: Edge) -> QuadraticScalar:
        return self.values[self.edges.index(canonical_edge(*edge))]

    def items(self):
        return zip(self.edges, self.values)

    def as_dict(self) -> dict[Edge, QuadraticScalar]:
        return dict(zip(self.edges, self.values))

    def support(self) -> list[Edge]:
        return [e for e, v in zip(self.edges, self.values) if v]

    def zero_set(self) -> list[Edge]:
        return [e for e, v in zip(self.edges, self.values) if not v]

    def _check(self, other: WeightVector) -> None:
        if self.edges != other.edges:
            raise ValueError("weights live on different edge sets")

    def __add__(self, other: WeightVector) -> WeightVector:
        self._check(other)
        return WeightVector(self.edges, [x + y for x, y in zip(self.values, other.values)])

    def __sub__(self, other: WeightVector) -> WeightVector:
        self._check(other)
        return WeightVector(self.edges, [x - y for x, y in zip(self.values, other.values)])

    def __neg__(self) -> WeightVector:
        return WeightVector(self.edges, [-x for x in self.values])

    def __mul__(self, t: object) -> WeightVector:
        return WeightVector(self.edges, [t * x for x in self.values])

    __rmul__ = __mul__

    def permuted(self, edge_perm: Mapping[Edge, Edge]) -> WeightVector:
        """The weight ``c o g``: value at ``e`` is the old value at ``g(e)``."""
        d = self.as_dict()
        return WeightVector(self.edges, [d[edge_perm[e]] for e in self.edges])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.edges == other.edges and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.edges, self.values))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}:{b}={v}" for (a, b), v in self.items())
        return f"WeightVector({body})"


def _as_scalar(x: object, radicand: int) -> QuadraticScalar:
    if isinstance(x, QuadraticScalar):
        return x
    return QuadraticScalar(x, 0, radicand)


@dataclass(frozen=True)
class EchelonBasis:
    """Reduced row-echelon basis of a subspace of weights (canonical edge order)."""

    edges: tuple[Edge, ...]
    vectors: tuple[WeightVector, ...]
    radicand: int = 5

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def contains(self, weight: WeightVector) -> bool:
        return linalg.in_span(list(weight.values), [list(v.values) for v in self.vectors])

    def rows(self) -> list[list[QuadraticScalar]]:
        return [list(v.values) for v in self.vectors]


@dataclass(frozen=True)
class AffineSolutionSet:
    particular: WeightVector
    homogeneous: EchelonBasis

    @property
    def dimension(self) -> int:
        return self.homogeneous.dimension


@dataclass(frozen=True)
class BalancingSystem:
    """Exact matrix with three rows per vertex (in vertex order) and one column per edge."""

    skeleton: PolytopeSkeleton
    rows: tuple[tuple[QuadraticScalar, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.skeleton.edges)

    def row_block(self, vertex: str) -> tuple[tuple[QuadraticScalar, ...], ...]:
        i = self.skeleton.index(vertex)
        return self.rows[3 * i : 3 * i + 3]

    def apply(self, weight: WeightVector) -> list[QuadraticScalar]:
        zero = QuadraticScalar(0, 0, self.skeleton.radicand)
        out = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, weight.values):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out


def _require_valid(skeleton: PolytopeSkeleton) -> None:
    diags = validate(skeleton)
    if diags:
        raise InvalidSkeleton("; ".join(diags))


def assemble_system(skeleton: PolytopeSkeleton) -> BalancingSystem:
    _require_valid(skeleton)
    zero = QuadraticScalar(0, 0, skeleton.radicand)
    col = skeleton.edge_index()
    rows = []
    for v, rv in zip(skeleton.names, skeleton.positions):
        block = [[zero] * len(col) for _ in range(3)]
        for w in skeleton.neighbors(v):
            entry = cross(skeleton.position(w), rv)
            j = col[canonical_edge(v, w)]
            for k in range(3):
                block[k][j] = entry[k]
        rows.extend(tuple(r) for r in block)
    return BalancingSystem(skeleton, tuple(rows))


# -- balancedness ------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Result of :func:`is_balanced`; ``failures`` maps vertex name to residual vector."""

    failures: tuple[tuple[str, Vector], ...]

    @property
    def balanced(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.balanced

    @property
    def failing_vertices(self) -> list[str]:
        return [v for v, _ in self.failures]


def residual(skeleton: PolytopeSkeleton, weight: WeightVector, v: str) -> Vector:
    zero = QuadraticScalar(0, 0, skeleton.radicand)
    total: Vector = (zero, zero, zero)
    values = weight.as_dict()
    for w in skeleton.neighbors(v):
        c = values[canonical_edge(v, w)]
        if c:
            total = add(total, scale(c, skeleton.position(w)))
    return cross(total, skeleton.position(v))


def is_balanced(skeleton: PolytopeSkeleton, weight: WeightVector) -> Verdict:
    if weight.edges != skeleton.edges:
        raise ValueError("weight is not defined on exactly the skeleton's edges")
    failures = []
    for v in skeleton.names:
        r = residual(skeleton, weight, v)
        if not is_zero(r):
            failures.append((v, r))
    return Verdict(tuple(failures))


# -- weight spaces -----------------------------------------------------------


def _one(skeleton: PolytopeSkeleton) -> QuadraticScalar:
    return QuadraticScalar(1, 0, skeleton.radicand)


def _basis(skeleton: PolytopeSkeleton, rows: Iterable[Sequence[QuadraticScalar]]) -> EchelonBasis:
    return EchelonBasis(skeleton.edges, tuple(WeightVector(skeleton.edges, r) for r in rows), skeleton.radicand)


def weight_space(skeleton: PolytopeSkeleton) -> EchelonBasis:
    system = assemble_system(skeleton)
    return _basis(skeleton, linalg.nullspace(system.rows, len(skeleton.edges), _one(skeleton)))


def echelon_basis(skeleton: PolytopeSkeleton, weights: Iterable[WeightVector]) -> EchelonBasis:
    """Canonical basis of the span of ``weights``."""
    rows = [list(w.values) for w in weights]
    if not rows:
        return EchelonBasis(skeleton.edges, (), skeleton.radicand)
    return _basis(skeleton, linalg.rref(rows, len(skeleton.edges), _one(skeleton))[0])


def constrained_solve(
    skeleton: PolytopeSkeleton,
    pins: Mapping[Edge, object] | None = None,
    zeros: Iterable[Edge] = (),
) -> AffineSolutionSet | None:
    """Balanced weights with prescribed values on ``pins`` and zero on ``zeros``.

    Returns None when the constraints are infeasible (including a pin that
    contradicts a zero).
    """
    system = assemble_system(skeleton)
    one = _one(skeleton)
    zero = one - one
    col = skeleton.edge_index()
    fixed: dict[int, QuadraticScalar] = {}
    for e, value in (pins or {}).items():
        e = canonical_edge(*e)
        if e not in col:
            raise KeyError(f"pinned edge {e[0]}:{e[1]} is not an edge")
        fixed[col[e]] = _as_scalar(value, skeleton.radicand)
    for e in zeros:
        e = canonical_edge(*e)
        if e not in col:
            raise KeyError(f"zero edge {e[0]}:{e[1]} is not an edge")
        if fixed.get(col[e], zero):
            return None
        fixed[col[e]] = zero

    free = [j for j in range(len(col)) if j not in fixed]
    rows = []
    rhs = []
    for row in system.rows:
        b = zero
        for j, value in fixed.items():
            if row[j] and value:
                b = b - row[j] * value
        reduced = [row[j] for j in free]
        if any(reduced) or b:
            rows.append(reduced)
            rhs.append(b)

    if free:
        result = linalg.solve(rows, rhs, len(free), one)
        if result is None:
            return None
        x_free, null_free = result
    else:
        if any(rhs):
            return None
        x_free, null_free = [], []

    def embed(x_part: Sequence[QuadraticScalar], base: Mapping[int, QuadraticScalar]) -> list[QuadraticScalar]:
        full = [zero] * len(col)
        for j, value in base.items():
            full[j] = value
        for j, value in zip(free, x_part):
            full[j] = value
        return full

    particular = embed(x_free, fixed)
    # free columns are a subsequence of the canonical order, so embedding keeps RREF
    homogeneous = [embed(v, {}) for v in null_free]
    return AffineSolutionSet(WeightVector(skeleton.edges, particular), _basis(skeleton, homogeneous))


def symmetric_space(skeleton: PolytopeSkeleton, generators: Iterable[Mapping[str, str]]) -> EchelonBasis:
    """Balanced weights invariant under the edge permutations induced by vertex ``generators``."""
    system = assemble_system(skeleton)
    one = _one(skeleton)
    zero = one - one
    col = skeleton.edge_index()
    rows = [list(r) for r in system.rows]
    for perm in generators:
        for e, image in edge_permutation(skeleton, perm).items():
            if e == image:
                continue
            row = [zero] * len(col)
            row[col[e]] = one
            row[col[image]] = -one
            rows.append(row)
    return _basis(skeleton, linalg.nullspace(rows, len(col), one))


# -- generic elements --------------------------------------------------------


def max_support_weight(solutions: EchelonBasis | AffineSolutionSet | None) -> WeightVector:
    """A member whose zero set is the common zero set of the whole family.

    Basis vectors are combined with coefficients ``1, t, t**2, ...`` (an affine
    set keeps coefficient 1 on its particular solution) for the smallest
    ``t = 1, 2, ...`` that creates no zero outside the common zero set.
    """
    if solutions is None:
        raise ValueError("empty solution set")
    if isinstance(solutions, AffineSolutionSet):
        edges = solutions.particular.edges
        base = list(solutions.particular.values)
        parts = [list(v.values) for v in solutions.homogeneous.vectors]
        first_power = 1
    else:
        edges = solutions.edges
        parts = [list(v.values) for v in solutions.vectors]
        if not parts:
            return WeightVector(edges, [QuadraticScalar(0, 0, solutions.radicand)] * len(edges))
        base = [p - p for p in parts[0]]
        first_power = 0
    candidates = [j for j in range(len(edges)) if base[j] or any(p[j] for p in parts)]
    t = 1
    while True:
        values = list(base)
        coeff = t**first_power
        for p in parts:
            for j in candidates:
                if p[j]:
                    values[j] = values[j] + coeff * p[j]
            coeff *= t
        if all(values[j] for j in candidates):
            return WeightVector(edges, values)
        t += 1


# -- support scan ------------------------------------------------------------


@dataclass(frozen=True)
class SupportReport:
    edge: Edge
    feasible: bool
    witness: WeightVector | None


def _scan_one(skeleton: PolytopeSkeleton, edge: Edge) -> SupportReport:
    solutions = constrained_solve(skeleton, zeros=[edge])
    if solutions is None:
        return SupportReport(edge, False, None)
    w = max_support_weight(solutions)
    feasible = w.zero_set() == [edge]
    return SupportReport(edge, feasible, w if feasible else None)


def _scan_star(args: tuple[PolytopeSkeleton, Edge]) -> SupportReport:
    return _scan_one(*args)


def support_scan(skeleton: PolytopeSkeleton, workers: int | None = None) -> list[SupportReport]:
    """For each edge, whether some balanced weight vanishes on exactly that edge.

    With ``workers > 1`` the per-edge solves run in separate processes; the
    report is identical to the sequential one.
    """
    _require_valid(skeleton)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_star, [(skeleton, e) for e in skeleton.edges]))
    return [_scan_one(skeleton, e) for e in skeleton.edges]
