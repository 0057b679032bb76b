"""F-affine subspaces of ``Mat_{n,p}(D)``.

A space is stored canonically: the translation space as the reduced
row-echelon basis of the flattened matrices (F-coordinates in the order
``((i*p + j)*d + k)``), and the offset reduced modulo that basis so it
vanishes on every pivot coordinate.  Two spaces are equal as sets exactly
when their canonical data agree.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import field_linalg
from .errors import InfiniteRing, NotLinear, RingMismatch, ShapeMismatch, SingularWitness
from .matrix_core import Matrix, is_invertible, rank, transpose_op
from .scalar_algebra import DivisionRingSpec

#: Sample count for rank checks over infinite base fields.
DEFAULT_RANK_SAMPLES = 2000
#: Height bound of sampled rational coefficients.
DEFAULT_RANK_HEIGHT = 10
#: Largest number of {0, 1, -1} coefficient combinations tried exhaustively.
SIGN_COMBINATION_CAP = 3**9


class Verdict(enum.Enum):
    PROVEN = "proven"
    SAMPLED_ONLY = "sampled_only"


class AffineMatrixSpace:
    """``offset + span_F(basis)`` inside ``Mat_{n,p}(D)``, in canonical form.

    Use :func:`reduce` (or :meth:`from_generators`) to build one; the
    constructor trusts its arguments to be canonical already.
    """

    __slots__ = ("ring", "n", "p", "offset_flat", "basis_flat", "pivots", "_hash")

    def __init__(self, ring: DivisionRingSpec, n: int, p: int, offset_flat, basis_flat, pivots):
        self.ring = ring
        self.n = n
        self.p = p
        self.offset_flat = tuple(offset_flat)
        self.basis_flat = tuple(tuple(b) for b in basis_flat)
        self.pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def from_generators(cls, offset: Matrix, generators: Sequence[Matrix] = ()) -> "AffineMatrixSpace":
        return reduce(offset, generators)

    @classmethod
    def linear(cls, ring: DivisionRingSpec, n: int, p: int, generators: Sequence[Matrix] = ()):
        return reduce(Matrix.zeros(ring, n, p), generators)

    @classmethod
    def full(cls, ring: DivisionRingSpec, n: int, p: int) -> "AffineMatrixSpace":
        N = n * p * ring.dim
        F = ring.base
        basis = [[F.one if t == s else F.zero for t in range(N)] for s in range(N)]
        return cls(ring, n, p, [F.zero] * N, basis, range(N))

    # -- accessors ------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis_flat)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.p)

    @property
    def offset(self) -> Matrix:
        return Matrix.from_flat(self.ring, self.n, self.p, self.offset_flat)

    @property
    def basis(self) -> list[Matrix]:
        return [Matrix.from_flat(self.ring, self.n, self.p, b) for b in self.basis_flat]

    @property
    def is_linear(self) -> bool:
        F = self.ring.base
        return all(F.is_zero(c) for c in self.offset_flat)

    def translation_space(self) -> "AffineMatrixSpace":
        F = self.ring.base
        return AffineMatrixSpace(
            self.ring, self.n, self.p, [F.zero] * len(self.offset_flat), self.basis_flat, self.pivots
        )

    def __eq__(self, other):
        if not isinstance(other, AffineMatrixSpace):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.basis_flat == other.basis_flat
            and self.offset_flat == other.offset_flat
            and self.ring == other.ring
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.p, self.basis_flat, self.offset_flat))
        return self._hash

    def __repr__(self):
        kind = "linear" if self.is_linear else "affine"
        return f"AffineMatrixSpace({kind}, {self.n}x{self.p}, dim_F={self.dim}, {self.ring!r})"

    # -- membership and enumeration -------------------------------------
    def contains(self, M: Matrix) -> bool:
        if M.shape != self.shape:
            raise ShapeMismatch(f"matrix {M.shape} vs space {self.shape}")
        if M.ring != self.ring:
            raise RingMismatch("matrix over a different ring")
        F = self.ring.base
        v = [F.sub(a, b) for a, b in zip(M.flatten(), self.offset_flat)]
        rem = field_linalg.reduce_vector(F, self.basis_flat, self.pivots, v)
        return all(F.is_zero(c) for c in rem)

    def __contains__(self, M: Matrix) -> bool:
        return self.contains(M)

    def point(self, coeffs: Sequence) -> Matrix:
        """``offset + sum_b coeffs[b] * basis[b]``."""
        return Matrix.from_flat(self.ring, self.n, self.p, self._point_flat(coeffs))

    def _point_flat(self, coeffs):
        F = self.ring.base
        v = list(self.offset_flat)
        for c, b in zip(coeffs, self.basis_flat):
            if F.is_zero(c):
                continue
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        return v

    def points(self) -> Iterator[Matrix]:
        """Every member, in lexicographic order of the basis coefficients."""
        F = self.ring.base
        if F.size is None:
            raise InfiniteRing("cannot enumerate a space over an infinite field")
        elems = list(F.elements())
        for coeffs in itertools.product(elems, repeat=self.dim):
            yield self.point(coeffs)

    def cardinality(self) -> int | None:
        size = self.ring.base.size
        return None if size is None else size**self.dim


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def reduce(offset: Matrix, generators: Sequence[Matrix] = ()) -> AffineMatrixSpace:
    """Canonical form of ``offset + span_F(generators)``."""
    ring, n, p = offset.ring, offset.n, offset.p
    for g in generators:
        if g.shape != (n, p):
            raise ShapeMismatch(f"generator {g.shape} vs offset {(n, p)}")
        if g.ring != ring:
            raise RingMismatch("generator over a different ring")
    return _reduce_flat(ring, n, p, offset.flatten(), [g.flatten() for g in generators])


def _reduce_flat(ring, n, p, offset_flat, gens_flat) -> AffineMatrixSpace:
    F = ring.base
    N = n * p * ring.dim
    R, pivots = field_linalg.rref(F, gens_flat, N) if gens_flat else ([], [])
    off = field_linalg.reduce_vector(F, R, pivots, offset_flat)
    return AffineMatrixSpace(ring, n, p, off, R, pivots)


def dim_f(S: AffineMatrixSpace) -> int:
    return S.dim


def contains(S: AffineMatrixSpace, M: Matrix) -> bool:
    return S.contains(M)


def act_equiv(S: AffineMatrixSpace, P: Matrix, Q: Matrix) -> AffineMatrixSpace:
    """Canonical form of ``{P @ M @ Q : M in S}``."""
    if P.shape != (S.n, S.n) or Q.shape != (S.p, S.p):
        raise ShapeMismatch("witness shapes do not match the space")
    if not (is_invertible(P) and is_invertible(Q)):
        raise SingularWitness("equivalence witnesses must be invertible")
    return reduce(P @ S.offset @ Q, [P @ B @ Q for B in S.basis])


def transpose_space(S: AffineMatrixSpace) -> AffineMatrixSpace:
    """Image of ``S`` under the transpose into matrices over the opposite ring."""
    return reduce(transpose_op(S.offset), [transpose_op(B) for B in S.basis])


# ---------------------------------------------------------------------------
# Hyperplanes of D^p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """``{x in D^p : row @ x == 0}`` with ``row`` left-normalized (leading 1)."""

    row: Matrix

    @classmethod
    def from_row(cls, row: Matrix) -> "Hyperplane":
        if row.n != 1:
            raise ShapeMismatch("a hyperplane is given by a 1 x p row")
        ring = row.ring
        lead = next((j for j, e in enumerate(row.rows[0]) if e != ring.zero), None)
        if lead is None:
            raise ValueError("the zero row does not define a hyperplane")
        return cls(row.scale_left(ring.inv(row.rows[0][lead])))

    @property
    def p(self) -> int:
        return self.row.p

    @property
    def lead(self) -> int:
        zero = self.row.ring.zero
        return next(j for j, e in enumerate(self.row.rows[0]) if e != zero)

    def kernel_basis(self) -> Matrix:
        """``p x (p-1)`` matrix whose columns are a right basis of the hyperplane.

        For ``j != lead`` the column is ``e_j - e_lead * h_j``.
        """
        ring = self.row.ring
        h = self.row.rows[0]
        j0, p = self.lead, self.p
        cols = []
        for j in range(p):
            if j == j0:
                continue
            col = [ring.zero] * p
            col[j] = ring.one
            col[j0] = ring.neg(h[j])
            cols.append(col)
        return Matrix(ring, p, p - 1, [[c[i] for c in cols] for i in range(p)])

    def adapted_basis(self) -> Matrix:
        """Invertible ``Q`` sending ``D^{p-1} x {0}`` onto the hyperplane."""
        K = self.kernel_basis()
        ring = self.row.ring
        j0 = self.lead
        return Matrix(
            ring, self.p, self.p,
            [list(K.rows[i]) + [ring.one if i == j0 else ring.zero] for i in range(self.p)],
        )

    def contains(self, x: Matrix) -> bool:
        return (self.row @ x).is_zero()

    def transport(self, Q: Matrix) -> "Hyperplane":
        """The hyperplane ``Q^{-1} H``, i.e. the one attached to ``P S Q``."""
        return Hyperplane.from_row(self.row @ Q)


def enumerate_hyperplanes(ring: DivisionRingSpec, p: int) -> Iterator[Hyperplane]:
    """All hyperplanes of ``D^p``, in lexicographic order of their rows."""
    if not ring.is_finite:
        raise InfiniteRing("hyperplanes of an infinite ring cannot be enumerated")
    if p < 1:
        return
    elems = list(ring.elements())
    for j0 in reversed(range(p)):
        for tail in itertools.product(elems, repeat=p - 1 - j0):
            row = [ring.zero] * j0 + [ring.one] + list(tail)
            yield Hyperplane(Matrix(ring, 1, p, [row]))


def sub_v_h(V: AffineMatrixSpace, H: Hyperplane) -> AffineMatrixSpace:
    """``V_H``: members of the linear space ``V`` whose kernel contains ``H``."""
    if not V.is_linear:
        raise NotLinear("sub_v_h expects a linear space")
    if H.p != V.p:
        raise ShapeMismatch("hyperplane lives in the wrong D^p")
    ring, F = V.ring, V.ring.base
    if V.dim == 0:
        return V
    K = H.kernel_basis()
    images = [(B @ K).flatten() for B in V.basis]
    # rows: coordinates of M K; columns: basis coefficients
    system = [list(col) for col in zip(*images)] if images[0] else []
    if system:
        null = field_linalg.nullspace(F, system, V.dim)
    else:
        null = [[F.one if t == s else F.zero for t in range(V.dim)] for s in range(V.dim)]
    gens = []
    for c in null:
        v = [F.zero] * len(V.offset_flat)
        for cb, b in zip(c, V.basis_flat):
            if not F.is_zero(cb):
                v = [F.add(x, F.mul(cb, y)) for x, y in zip(v, b)]
        gens.append(v)
    return _reduce_flat(ring, V.n, V.p, V.offset_flat, gens)


# ---------------------------------------------------------------------------
# Rank profile
# ---------------------------------------------------------------------------


def max_rank(S: AffineMatrixSpace, **kwargs) -> tuple[int, Verdict]:
    """Largest rank of a member.

    Exact (``PROVEN``) over finite fields; over infinite fields a seeded
    sample plus small sign combinations (``SAMPLED_ONLY``).
    """
    r, _, verdict = max_rank_witness(S, **kwargs)
    return r, verdict


def max_rank_witness(
    S: AffineMatrixSpace,
    *,
    stop_above: int | None = None,
    samples: int = DEFAULT_RANK_SAMPLES,
    height: int = DEFAULT_RANK_HEIGHT,
    seed: int = 0,
) -> tuple[int, Matrix, Verdict]:
    """Like :func:`max_rank` but also returns a member achieving the rank.

    The first member (in enumeration order) of largest rank is returned.
    With ``stop_above`` the scan stops at the first member of rank larger
    than that bound.
    """
    full = min(S.n, S.p)
    best, best_M = -1, None
    if S.ring.is_finite:
        candidates, verdict = S.points(), Verdict.PROVEN
    else:
        candidates, verdict = _sample_points(S, samples, height, seed), Verdict.SAMPLED_ONLY
    for M in candidates:
        r = rank(M)
        if r > best:
            best, best_M = r, M
            if (stop_above is not None and r > stop_above) or r == full:
                break
    return best, best_M, verdict


def _sample_points(S: AffineMatrixSpace, samples: int, height: int, seed: int):
    F = S.ring.base
    m = S.dim
    signs = [F.zero, F.one, F.neg(F.one)]
    if 3**m <= SIGN_COMBINATION_CAP:
        yield from (S.point(c) for c in itertools.product(signs, repeat=m))
    rng = random.Random(seed)
    for _ in range(samples):
        if 3**m > SIGN_COMBINATION_CAP and rng.random() < 0.5:
            yield S.point([rng.choice(signs) for _ in range(m)])
        else:
            yield S.point([F.random(rng, height) for _ in range(m)])
