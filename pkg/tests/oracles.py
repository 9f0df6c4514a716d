"""Independent reference computations for the test suite.

Nothing here uses the exact elimination or the exact balancing assembly:
scalars are evaluated with mpmath, matrices are built from floating point
coordinates and ranks come from partial-pivot Gaussian elimination.
"""

from __future__ import annotations

import mpmath

DPS = 50
PIVOT_TOL = mpmath.mpf("1e-9")


def mp_value(x, dps: int = DPS) -> mpmath.mpf:
    with mpmath.workdps(dps + 10):
        return mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(
            x.radicand
        )


def mp_rank(rows, tol=PIVOT_TOL, dps: int = DPS) -> int:
    with mpmath.workdps(dps):
        m = [[mpmath.mpf(v) for v in row] for row in rows]
        if not m:
            return 0
        n, ncols = len(m), len(m[0])
        r = 0
        for c in range(ncols):
            best = max(range(r, n), key=lambda i: abs(m[i][c]), default=None)
            if best is None or abs(m[best][c]) <= tol:
                continue
            m[r], m[best] = m[best], m[r]
            for i in range(r + 1, n):
                f = m[i][c] / m[r][c]
                if f:
                    for j in range(c, ncols):
                        m[i][j] -= f * m[r][j]
            r += 1
            if r == n:
                break
        return r


def float_positions(skeleton, dps: int = DPS):
    with mpmath.workdps(dps):
        return {n: [mp_value(x, dps) for x in p] for n, p in zip(skeleton.names, skeleton.positions)}


def float_balancing_rows(skeleton, dps: int = DPS):
    """Balancing matrix assembled from floating point rays (3 rows per vertex)."""
    pos = float_positions(skeleton, dps)
    edges = sorted({tuple(sorted(e)) for e in skeleton.edges})
    col = {e: j for j, e in enumerate(edges)}
    rows = []
    with mpmath.workdps(dps):
        for v in skeleton.names:
            block = [[mpmath.mpf(0)] * len(edges) for _ in range(3)]
            rv = pos[v]
            for e in edges:
                if v not in e:
                    continue
                w = e[1] if e[0] == v else e[0]
                rw = pos[w]
                c = [rw[1] * rv[2] - rw[2] * rv[1], rw[2] * rv[0] - rw[0] * rv[2], rw[0] * rv[1] - rw[1] * rv[0]]
                for k in range(3):
                    block[k][col[e]] = c[k]
            rows.extend(block)
    return rows, edges


def float_weight_space_dimension(skeleton) -> int:
    rows, edges = float_balancing_rows(skeleton)
    return len(edges) - mp_rank(rows)


def float_constrained_dimension(skeleton, fixed_edges) -> int:
    """Dimension of the homogeneous solution set when ``fixed_edges`` are prescribed."""
    rows, edges = float_balancing_rows(skeleton)
    free = [j for j, e in enumerate(edges) if e not in set(fixed_edges)]
    sub = [[row[j] for j in free] for row in rows]
    return len(free) - mp_rank(sub)


def float_residual_norms(skeleton, weight_map, dps: int = DPS):
    """Per-vertex norm of cross(sum c(vw) r_w, r_v), all in floating point."""
    pos = float_positions(skeleton, dps)
    out = {}
    with mpmath.workdps(dps):
        for v in skeleton.names:
            s = [mpmath.mpf(0)] * 3
            for e, c in weight_map.items():
                if v in e:
                    w = e[1] if e[0] == v else e[0]
                    cv = mp_value(c, dps)
                    s = [s[k] + cv * pos[w][k] for k in range(3)]
            rv = pos[v]
            cr = [s[1] * rv[2] - s[2] * rv[1], s[2] * rv[0] - s[0] * rv[2], s[0] * rv[1] - s[1] * rv[0]]
            out[v] = mpmath.sqrt(sum(x * x for x in cr))
    return out


def brute_force_edges(skeleton, d2) -> list[tuple[str, str]]:
    """Pairs at squared distance ``d2`` by floating point scan (tolerance 1e-30)."""
    pos = float_positions(skeleton)
    target = mp_value(d2)
    names = list(skeleton.names)
    found = []
    with mpmath.workdps(DPS):
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                d = sum((pos[a][k] - pos[b][k]) ** 2 for k in range(3))
                if abs(d - target) < mpmath.mpf("1e-30"):
                    found.append(tuple(sorted((a, b))))
    return sorted(found)
