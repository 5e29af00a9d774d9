"""Exact linear algebra over Q on lists of ``Fraction`` rows."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list of rows, each a list of Fraction


def to_fractions(rows) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns (matrix, pivot column list)."""
    A = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(A):
            break
        pr = next((i for i in range(r, len(A)) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def column_space_basis(columns: Sequence[Sequence], dim: int) -> list[list[Fraction]]:
    """A basis (in RREF form) of the span of the given vectors in Q^dim."""
    if not columns:
        return []
    R, _ = rref(columns, dim)
    return R


def solve(rows, b) -> list[Fraction] | None:
    """One solution of A v = b, or None if the system is inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    if not rows:
        return [] if all(v == 0 for v in b) else None
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        v[p] = row[ncols]
    return v


def in_span(vectors, target, dim) -> bool:
    if all(t == 0 for t in target):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [list(target)], dim) == rank(vectors, dim)


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), Fraction(0)) for j in range(ncols)] for i in range(len(A))]


def matvec(A, v):
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]
