"""Dense linear algebra over a commutative base field.

Matrices are lists of rows; entries are elements of ``field`` in canonical
form.  Everything here is exact and commutative, so it is only used for
F-linear questions (coordinates, spans, regular representations), never for
arithmetic over the division ring itself.
"""

from __future__ import annotations

from typing import Sequence


def rref(field, rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row-echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of ``R[i]``.
    """
    R = [list(row) for row in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    add, mul, neg, inv, is_zero = field.add, field.mul, field.neg, field.inv, field.is_zero
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(R):
            break
        found = next((i for i in range(top, len(R)) if not is_zero(R[i][col])), None)
        if found is None:
            continue
        R[top], R[found] = R[found], R[top]
        piv = R[top]
        if piv[col] != field.one:
            s = inv(piv[col])
            piv = R[top] = [mul(s, x) for x in piv]
        for i in range(len(R)):
            if i == top:
                continue
            f = R[i][col]
            if is_zero(f):
                continue
            nf = neg(f)
            row = R[i]
            R[i] = [add(x, mul(nf, y)) for x, y in zip(row, piv)]
        pivots.append(col)
        top += 1
    return R[:top], pivots


def rank(field, rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(field, rows)[1])


def nullspace(field, rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of ``{x : A x = 0}`` for the matrix ``A`` given by ``rows``."""
    R, pivots = rref(field, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [field.zero] * ncols
        x[fc] = field.one
        for row, pc in zip(R, pivots):
            x[pc] = field.neg(row[fc])
        basis.append(x)
    return basis


def solve(field, rows: Sequence[Sequence], rhs: Sequence):
    """One solution of ``A x = rhs`` (free variables set to zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    R, pivots = rref(field, aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def reduce_vector(field, basis_rref: Sequence[Sequence], pivots: Sequence[int], v: Sequence):
    """Remainder of ``v`` modulo the row space of an RREF basis.

    The remainder has zeros in every pivot coordinate; it is zero exactly
    when ``v`` lies in the span.
    """
    v = list(v)
    for row, pc in zip(basis_rref, pivots):
        f = v[pc]
        if field.is_zero(f):
            continue
        nf = field.neg(f)
        v = [field.add(x, field.mul(nf, y)) for x, y in zip(v, row)]
    return v
