"""Matrices over a division ring.

Side conventions (the classic source of noncommutative bugs, so fixed once):

* a matrix acts on the *right* vector space ``D^p`` of columns; column
  operations multiply columns on the right by scalars;
* row operations multiply rows on the left by scalars;
* rank is the dimension of the right span of the columns, which equals the
  dimension of the left span of the rows.

Indices are 0-based throughout: ``unit(ring, n, p, i, j)`` is the matrix
with a single 1 in row ``i``, column ``j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import field_linalg
from .errors import RingMismatch, ShapeMismatch
from .scalar_algebra import DivisionRingSpec, Scalar, opposite


class Matrix:
    """An immutable ``n x p`` matrix; entries are raw coordinate tuples."""

    __slots__ = ("ring", "n", "p", "rows", "_hash")

    def __init__(self, ring: DivisionRingSpec, n: int, p: int, rows: Sequence[Sequence[tuple]]):
        self.ring = ring
        self.n = n
        self.p = p
        self.rows = tuple(tuple(r) for r in rows)
        if len(self.rows) != n or any(len(r) != p for r in self.rows):
            raise ShapeMismatch(f"rows do not form a {n}x{p} matrix")
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_entries(cls, ring: DivisionRingSpec, entries: Sequence[Sequence], p: int | None = None):
        """Build from nested lists of Scalars, coordinate tuples or base-field values."""
        n = len(entries)
        if p is None:
            p = len(entries[0]) if n else 0
        rows = [[_coerce(ring, x) for x in row] for row in entries]
        return cls(ring, n, p, rows)

    @classmethod
    def zeros(cls, ring: DivisionRingSpec, n: int, p: int) -> "Matrix":
        z = ring.zero
        return cls(ring, n, p, [[z] * p for _ in range(n)])

    @classmethod
    def identity(cls, ring: DivisionRingSpec, n: int) -> "Matrix":
        return cls.rank_normal(ring, n, n, n)

    @classmethod
    def rank_normal(cls, ring: DivisionRingSpec, n: int, p: int, r: int) -> "Matrix":
        """``J_r``: identity block of size ``r`` in the upper-left corner."""
        z, o = ring.zero, ring.one
        return cls(ring, n, p, [[o if i == j and i < r else z for j in range(p)] for i in range(n)])

    @classmethod
    def unit(cls, ring: DivisionRingSpec, n: int, p: int, i: int, j: int, value=None) -> "Matrix":
        """``E_{i,j}`` (0-based), optionally with ``value`` instead of 1."""
        rows = [[ring.zero] * p for _ in range(n)]
        rows[i][j] = ring.one if value is None else _coerce(ring, value)
        return cls(ring, n, p, rows)

    @classmethod
    def from_flat(cls, ring: DivisionRingSpec, n: int, p: int, vec: Sequence) -> "Matrix":
        """Inverse of :meth:`flatten`."""
        d = ring.dim
        if len(vec) != n * p * d:
            raise ShapeMismatch("flat vector has the wrong length")
        rows = [
            [tuple(vec[(i * p + j) * d : (i * p + j + 1) * d]) for j in range(p)] for i in range(n)
        ]
        return cls(ring, n, p, rows)

    # -- basic protocol -------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.p)

    def __getitem__(self, idx) -> Scalar:
        i, j = idx
        return Scalar(self.ring, self.rows[i][j])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows and self.ring == other.ring

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.p, self.rows))
        return self._hash

    def __repr__(self):
        F = self.ring.base
        if self.ring.dim == 1:
            body = "; ".join(" ".join(F.to_str(e[0]) for e in row) for row in self.rows)
        else:
            body = "; ".join(
                " ".join("(" + ",".join(F.to_str(c) for c in e) + ")" for e in row) for row in self.rows
            )
        return f"Matrix{self.n}x{self.p}[{body}]"

    def flatten(self) -> tuple:
        """F-coordinates in the order ``((i*p + j)*d + k)``."""
        return tuple(c for row in self.rows for e in row for c in e)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(e == z for row in self.rows for e in row)

    def column(self, j: int) -> "Matrix":
        return Matrix(self.ring, self.n, 1, [[row[j]] for row in self.rows])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix(self.ring, len(rows), len(cols), [[self.rows[i][j] for j in cols] for i in rows])

    def hstack(self, other: "Matrix") -> "Matrix":
        _check_ring(self, other)
        if self.n != other.n:
            raise ShapeMismatch("hstack needs equal row counts")
        return Matrix(self.ring, self.n, self.p + other.p, [a + b for a, b in zip(self.rows, other.rows)])

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        add = self.ring.add
        return Matrix(
            self.ring, self.n, self.p,
            [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        sub = self.ring.sub
        return Matrix(
            self.ring, self.n, self.p,
            [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
        )

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, self.n, self.p, [[neg(a) for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def scale_right(self, a) -> "Matrix":
        """``M * a`` for a scalar ``a`` (right multiplication of every entry)."""
        a = _coerce(self.ring, a)
        mul = self.ring.mul
        return Matrix(self.ring, self.n, self.p, [[mul(e, a) for e in r] for r in self.rows])

    def scale_left(self, a) -> "Matrix":
        a = _coerce(self.ring, a)
        mul = self.ring.mul
        return Matrix(self.ring, self.n, self.p, [[mul(a, e) for e in r] for r in self.rows])

    def rank(self) -> int:
        return rank(self)


def _coerce(ring: DivisionRingSpec, x) -> tuple:
    """Scalar, coordinate tuple/list, or a base-field value (embedded as f*1)."""
    if isinstance(x, Scalar):
        if x.ring != ring:
            raise RingMismatch("scalar from a different ring")
        return x.coords
    if isinstance(x, (tuple, list)):
        # over an extension base a bare int tuple is one F-element
        if ring.base.kind != "extension" or (x and isinstance(x[0], (tuple, list))):
            return ring.canon(tuple(x))
    return ring.from_base(x)


def _check_ring(A: Matrix, B: Matrix) -> None:
    if A.ring is not B.ring and A.ring != B.ring:
        raise RingMismatch("matrices over different rings")


def _check_same_shape(A: Matrix, B: Matrix) -> None:
    _check_ring(A, B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"shapes {A.shape} and {B.shape} differ")


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """``A @ B`` with the order of every scalar product preserved."""
    _check_ring(A, B)
    if A.p != B.n:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    ring = A.ring
    mul, add, zero = ring.mul, ring.add, ring.zero
    cols = list(zip(*B.rows)) if B.n else [() for _ in range(B.p)]
    out = []
    for row in A.rows:
        out_row = []
        for col in cols:
            acc = zero
            for a, b in zip(row, col):
                if a != zero and b != zero:
                    acc = add(acc, mul(a, b))
            out_row.append(acc)
        out.append(out_row)
    return Matrix(ring, A.n, B.p, out)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return A + B


def scale_f(f, M: Matrix) -> Matrix:
    """Multiply by an element of the central field F."""
    f = M.ring.base.canon(f)
    scale = M.ring.scale
    return Matrix(M.ring, M.n, M.p, [[scale(f, e) for e in r] for r in M.rows])


# ---------------------------------------------------------------------------
# Rank and normal form
# ---------------------------------------------------------------------------


def rank(M: Matrix) -> int:
    """Rank by left row operations ``row_i <- row_i - a * row_pivot``."""
    ring = M.ring
    R = [list(r) for r in M.rows]
    n, p = M.n, M.p
    zero, mul, sub, inv = ring.zero, ring.mul, ring.sub, ring.inv
    top = 0
    for col in range(p):
        if top == n:
            break
        piv = next((i for i in range(top, n) if R[i][col] != zero), None)
        if piv is None:
            continue
        R[top], R[piv] = R[piv], R[top]
        pivot_inv = inv(R[top][col])
        prow = R[top]
        for i in range(top + 1, n):
            f = R[i][col]
            if f == zero:
                continue
            a = mul(f, pivot_inv)
            row = R[i]
            for j in range(col, p):
                if prow[j] != zero:
                    row[j] = sub(row[j], mul(a, prow[j]))
        top += 1
    return top


@dataclass(frozen=True)
class RankCertificate:
    """``P @ M @ Q == J_r`` with stored inverses of ``P`` and ``Q``."""

    rank: int
    P: Matrix
    Q: Matrix
    P_inv: Matrix
    Q_inv: Matrix

    def verify(self, M: Matrix) -> bool:
        ring = M.ring
        J = Matrix.rank_normal(ring, M.n, M.p, self.rank)
        return (
            self.P @ M @ self.Q == J
            and self.P @ self.P_inv == Matrix.identity(ring, M.n)
            and self.Q @ self.Q_inv == Matrix.identity(ring, M.p)
        )


def normal_form(M: Matrix) -> RankCertificate:
    """Reduce ``M`` to ``J_r`` by two-sided elimination.

    The pivot at each stage is the first nonzero entry of the remaining
    lower-right block in row-major order.  Both witnesses and their inverses
    are accumulated along the way.
    """
    ring = M.ring
    n, p = M.n, M.p
    zero, one = ring.zero, ring.one
    mul, add, sub, inv = ring.mul, ring.add, ring.sub, ring.inv
    A = [list(r) for r in M.rows]
    P = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Pi = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Q = [[one if i == j else zero for j in range(p)] for i in range(p)]
    Qi = [[one if i == j else zero for j in range(p)] for i in range(p)]

    t = 0
    while t < min(n, p):
        pos = next(((i, j) for i in range(t, n) for j in range(t, p) if A[i][j] != zero), None)
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            A[t], A[i0] = A[i0], A[t]
            P[t], P[i0] = P[i0], P[t]
            for row in Pi:
                row[t], row[i0] = row[i0], row[t]
        if j0 != t:
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            for row in Q:
                row[t], row[j0] = row[j0], row[t]
            Qi[t], Qi[j0] = Qi[j0], Qi[t]
        a = A[t][t]
        if a != one:
            ai = inv(a)
            A[t] = [mul(ai, x) for x in A[t]]
            P[t] = [mul(ai, x) for x in P[t]]
            for row in Pi:
                row[t] = mul(row[t], a)
        # clear column t with left row operations
        for i in range(n):
            f = A[i][t]
            if i == t or f == zero:
                continue
            A[i] = [sub(x, mul(f, y)) for x, y in zip(A[i], A[t])]
            P[i] = [sub(x, mul(f, y)) for x, y in zip(P[i], P[t])]
            for row in Pi:
                row[t] = add(row[t], mul(row[i], f))
        # clear row t with right column operations
        for j in range(p):
            g = A[t][j]
            if j == t or g == zero:
                continue
            for row in A:
                row[j] = sub(row[j], mul(row[t], g))
            for row in Q:
                row[j] = sub(row[j], mul(row[t], g))
            Qi[t] = [add(x, mul(g, y)) for x, y in zip(Qi[t], Qi[j])]
        t += 1
    return RankCertificate(
        t,
        Matrix(ring, n, n, P),
        Matrix(ring, p, p, Q),
        Matrix(ring, n, n, Pi),
        Matrix(ring, p, p, Qi),
    )


def is_invertible(M: Matrix) -> bool:
    return M.n == M.p and rank(M) == M.n


def inverse(M: Matrix) -> Matrix:
    """Inverse of a square invertible matrix, read off its normal form."""
    if M.n != M.p:
        raise ShapeMismatch("only square matrices are invertible")
    cert = normal_form(M)
    if cert.rank != M.n:
        raise ValueError("matrix is singular")
    # P M Q = I  =>  M^{-1} = Q P
    return cert.Q @ cert.P


# ---------------------------------------------------------------------------
# Oracles and duality
# ---------------------------------------------------------------------------


def regular_rep(M: Matrix) -> list[list]:
    """The F-matrix (``dn x dp``) of ``x -> M x`` on coordinates of ``D^p``.

    Row index ``i*d + k`` and column index ``j*d + l``; its F-rank equals
    ``d * rank(M)``, which makes it an independent rank oracle.
    """
    ring = M.ring
    d, F = ring.dim, ring.base
    out = [[F.zero] * (d * M.p) for _ in range(d * M.n)]
    for i, row in enumerate(M.rows):
        for j, e in enumerate(row):
            if e == ring.zero:
                continue
            L = ring.left_mul_matrix(e)
            for k in range(d):
                for l in range(d):
                    out[i * d + k][j * d + l] = L[k][l]
    return out


def regular_rank(M: Matrix) -> int:
    """``rank_F(regular_rep(M))``."""
    return field_linalg.rank(M.ring.base, regular_rep(M))


def transpose_op(M: Matrix) -> Matrix:
    """Transpose into a matrix over the opposite ring.

    Rank preserving and product reversing:
    ``transpose_op(A @ B) == transpose_op(B) @ transpose_op(A)``.
    """
    return Matrix(opposite(M.ring), M.p, M.n, list(zip(*M.rows)) if M.n else [() for _ in range(M.p)])


# ---------------------------------------------------------------------------
# Random generation
# ---------------------------------------------------------------------------


def random_matrix(ring: DivisionRingSpec, n: int, p: int, rng: random.Random, height: int = 10) -> Matrix:
    return Matrix(ring, n, p, [[ring.random_element(rng, height) for _ in range(p)] for _ in range(n)])


def random_matrix_of_rank(
    ring: DivisionRingSpec, n: int, p: int, r: int, rng: random.Random, height: int = 10
) -> Matrix:
    """A product ``L @ R`` with inner dimension ``r``; rank is at most ``r``."""
    if r == 0:
        return Matrix.zeros(ring, n, p)
    return random_matrix(ring, n, r, rng, height) @ random_matrix(ring, r, p, rng, height)


def random_invertible(
    ring: DivisionRingSpec, n: int, rng: random.Random, steps: int | None = None, height: int = 3
) -> tuple[Matrix, Matrix]:
    """A random product of elementary matrices together with its inverse."""
    zero, one = ring.zero, ring.one
    mul, add, sub, inv = ring.mul, ring.add, ring.sub, ring.inv
    A = [[one if i == j else zero for j in range(n)] for i in range(n)]
    Ai = [[one if i == j else zero for j in range(n)] for i in range(n)]
    if steps is None:
        steps = 3 * n * n
    for _ in range(steps if n else 0):
        kind = rng.random()
        i = rng.randrange(n)
        if kind < 0.2 and n > 1:
            k = rng.randrange(n)
            A[i], A[k] = A[k], A[i]
            for row in Ai:
                row[i], row[k] = row[k], row[i]
        elif kind < 0.45:
            a = ring.random_nonzero(rng, height)
            ai = inv(a)
            A[i] = [mul(a, x) for x in A[i]]
            for row in Ai:
                row[i] = mul(row[i], ai)
        elif n > 1:
            k = rng.randrange(n - 1)
            k += k >= i
            f = ring.random_element(rng, height)
            # row_i <- row_i + f row_k ; inverse is row_i <- row_i - f row_k
            A[i] = [add(x, mul(f, y)) for x, y in zip(A[i], A[k])]
            for row in Ai:
                row[k] = sub(row[k], mul(row[i], f))
    return Matrix(ring, n, n, A), Matrix(ring, n, n, Ai)
