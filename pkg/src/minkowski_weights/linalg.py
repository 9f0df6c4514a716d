"""Exact elimination over a field given by Python objects supporting + - * /.

Forward elimination is fraction-free (Bareiss): each update is
``(pivot * a_ij - a_ic * a_rj) / previous_pivot``, which is an exact division.
A reduced-echelon postpass then makes the result canonical: the reduced row
echelon form of a subspace is unique, so the output does not depend on the
order of the input rows.
"""

from __future__ import annotations

from typing import Any, Sequence

Row = list[Any]


def _is_zero(x: Any) -> bool:
    return not x


def bareiss_forward(rows: Sequence[Sequence[Any]], ncols: int, one: Any) -> tuple[list[Row], list[int]]:
    """Fraction-free row echelon form. Returns ``(nonzero rows, pivot columns)``."""
    m = [list(r) for r in rows]
    n = len(m)
    pivots: list[int] = []
    prev_inv = one
    r = 0
    for c in range(ncols):
        if r == n:
            break
        k = next((i for i in range(r, n) if not _is_zero(m[i][c])), None)
        if k is None:
            continue
        if k != r:
            m[r], m[k] = m[k], m[r]
        pivot_row = m[r]
        p = pivot_row[c]
        for i in range(r + 1, n):
            row = m[i]
            f = row[c]
            if _is_zero(f):
                for j in range(c + 1, ncols):
                    if not _is_zero(row[j]):
                        row[j] = row[j] * p * prev_inv
            else:
                for j in range(c + 1, ncols):
                    a, b = row[j], pivot_row[j]
                    if _is_zero(b):
                        if not _is_zero(a):
                            row[j] = a * p * prev_inv
                    elif _is_zero(a):
                        row[j] = -(f * b) * prev_inv
                    else:
                        row[j] = (p * a - f * b) * prev_inv
                row[c] = row[c] - row[c]
        prev_inv = one / p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(rows: Sequence[Sequence[Any]], ncols: int, one: Any) -> tuple[list[Row], list[int]]:
    """Canonical reduced row echelon form (leading ones, zeros above and below)."""
    m, pivots = bareiss_forward(rows, ncols, one)
    for r in range(len(m) - 1, -1, -1):
        c = pivots[r]
        inv = one / m[r][c]
        row = m[r]
        for j in range(c, ncols):
            if not _is_zero(row[j]):
                row[j] = row[j] * inv
        for i in range(r):
            f = m[i][c]
            if _is_zero(f):
                continue
            upper = m[i]
            for j in range(c, ncols):
                if not _is_zero(row[j]):
                    upper[j] = upper[j] - f * row[j]
    return m, pivots


def rank(rows: Sequence[Sequence[Any]], ncols: int, one: Any) -> int:
    return len(bareiss_forward(rows, ncols, one)[1])


def nullspace(rows: Sequence[Sequence[Any]], ncols: int, one: Any) -> list[Row]:
    """Basis of ``{x : A x = 0}`` in reduced row echelon form."""
    zero = one - one
    m, pivots = rref(rows, ncols, one)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            if not _is_zero(m[r][f]):
                v[c] = -m[r][f]
        basis.append(v)
    return rref(basis, ncols, one)[0] if basis else []


def solve(rows: Sequence[Sequence[Any]], rhs: Sequence[Any], ncols: int, one: Any) -> tuple[Row, list[Row]] | None:
    """Solve ``A x = b``: returns ``(particular, nullspace basis)`` or None if inconsistent.

    The particular solution is reduced against the nullspace basis (zero at
    every pivot column of the basis), which makes it canonical for the
    affine solution set.
    """
    zero = one - one
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(augmented, ncols + 1, one)
    if pivots and pivots[-1] == ncols:
        return None
    x = [zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    homogeneous = nullspace(rows, ncols, one)
    return reduce_against(x, homogeneous), homogeneous


def reduce_against(v: Sequence[Any], basis: Sequence[Sequence[Any]]) -> Row:
    """Reduce ``v`` by an RREF basis so it vanishes on the basis pivot columns."""
    out = list(v)
    for b in basis:
        c = next(j for j, x in enumerate(b) if not _is_zero(x))
        f = out[c]
        if _is_zero(f):
            continue
        for j in range(c, len(out)):
            if not _is_zero(b[j]):
                out[j] = out[j] - f * b[j]
    return out


def in_span(v: Sequence[Any], basis: Sequence[Sequence[Any]]) -> bool:
    """Membership of ``v`` in the row space of an RREF ``basis``."""
    return all(_is_zero(x) for x in reduce_against(v, basis))
