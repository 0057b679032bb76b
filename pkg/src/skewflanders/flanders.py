"""Maximal bounded-rank affine spaces of matrices over a division ring.

For ``n >= p >= r`` an F-affine space of matrices of rank at most ``r`` has
F-dimension at most ``d*n*r``.  At equality it is equivalent to one of

* ``(a)`` the compression space ``R(0, r)`` (last ``p - r`` columns zero);
* ``(b)`` ``R(r, 0)`` (last ``n - r`` rows zero), possible only when ``n == p``;
* ``(c)`` the affine space ``U2 = {[[x, 0], [y, x + 1]]}`` over ``F_2``, possible
  only for ``(n, p, r) == (2, 2, 1)``.

:func:`classify` recovers which case occurs and returns explicit invertible
witnesses ``(P, Q)`` with ``P S Q`` equal to the model space.  The algorithm
is the constructive induction on the number of columns: find a hyperplane
``H`` of ``D^p`` with few translation matrices vanishing on it, move it to
``D^{p-1} x {0}``, classify the first ``p - 1`` columns recursively and
recover the last column as a right multiplication ``N -> N X``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import field_linalg
from .errors import (
    ContradictionWitness,
    DomainTooFlat,
    Incompatible,
    InfiniteRing,
    NotBoundedRank,
    ShapeMismatch,
)
from .matrix_core import Matrix, normal_form, rank
from .scalar_algebra import DivisionRingSpec, gf_spec
from .space import (
    AffineMatrixSpace,
    Hyperplane,
    act_equiv,
    enumerate_hyperplanes,
    max_rank_witness,
    reduce,
    sub_v_h,
)


class Tag(enum.Enum):
    COMPRESSION_COLUMNS = "a"
    COMPRESSION_ROWS = "b"
    EXCEPTIONAL_U2 = "c"
    NOT_MAXIMAL = "not_maximal"
    NOT_BOUNDED_RANK = "not_bounded"

    @property
    def is_extremal(self) -> bool:
        return self.value in ("a", "b", "c")


#: tag exchanged by the transpose into the opposite ring
DUAL_TAG = {
    Tag.COMPRESSION_COLUMNS: Tag.COMPRESSION_ROWS,
    Tag.COMPRESSION_ROWS: Tag.COMPRESSION_COLUMNS,
    Tag.EXCEPTIONAL_U2: Tag.EXCEPTIONAL_U2,
}


@dataclass(frozen=True)
class ClassificationResult:
    tag: Tag
    P: Matrix | None = None
    Q: Matrix | None = None
    witness: Matrix | None = None

    def model(self, ring: DivisionRingSpec, n: int, p: int, r: int) -> AffineMatrixSpace:
        return model_space(self.tag, ring, n, p, r)


# ---------------------------------------------------------------------------
# Model spaces
# ---------------------------------------------------------------------------


def compression(s: int, t: int, n: int, p: int, ring: DivisionRingSpec) -> AffineMatrixSpace:
    """``R(s, t)``: matrices whose lower-right ``(n-s) x (p-t)`` block is zero."""
    if not (0 <= s <= n and 0 <= t <= p):
        raise ValueError(f"need 0 <= s <= n and 0 <= t <= p, got s={s}, t={t}, n={n}, p={p}")
    d, F = ring.dim, ring.base
    N = n * p * d
    basis = []
    for i in range(n):
        for j in range(p):
            if i < s or j < t:
                for k in range(d):
                    v = [F.zero] * N
                    v[(i * p + j) * d + k] = F.one
                    basis.append(v)
    pivots = [b.index(F.one) for b in basis]
    return AffineMatrixSpace(ring, n, p, [F.zero] * N, basis, pivots)


def u2_space() -> AffineMatrixSpace:
    """``{[[x, 0], [y, x + 1]] : x, y in F_2}``."""
    F2 = gf_spec(2, 1)
    offset = Matrix.unit(F2, 2, 2, 1, 1)
    return reduce(offset, [Matrix.from_entries(F2, [[1, 0], [0, 1]]), Matrix.unit(F2, 2, 2, 1, 0)])


def model_space(tag: Tag, ring: DivisionRingSpec, n: int, p: int, r: int) -> AffineMatrixSpace:
    if tag is Tag.COMPRESSION_COLUMNS:
        return compression(0, r, n, p, ring)
    if tag is Tag.COMPRESSION_ROWS:
        return compression(r, 0, n, p, ring)
    if tag is Tag.EXCEPTIONAL_U2:
        return u2_space()
    raise ValueError(f"{tag} has no model space")


# ---------------------------------------------------------------------------
# Extraction lemma
# ---------------------------------------------------------------------------


def extraction_predicate(M: Matrix, r: int) -> bool:
    """Check ``rk M <= r and rk(M + E_{n,p}) <= r  =>  rk A <= r - 1``.

    ``A`` is the upper-left ``(n-1) x (p-1)`` block and ``E_{n,p}`` the unit
    matrix at the bottom-right corner.  Always true; used as an oracle.
    """
    n, p = M.shape
    if n < 1 or p < 1:
        raise ShapeMismatch("extraction needs n, p >= 1")
    if rank(M) > r:
        return True
    if rank(M + Matrix.unit(M.ring, n, p, n - 1, p - 1)) > r:
        return True
    return rank(M.submatrix(range(n - 1), range(p - 1))) <= r - 1


# ---------------------------------------------------------------------------
# Key lemma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmallHyperplane:
    hyperplane: Hyperplane
    dim: int


@dataclass(frozen=True)
class EquivRr0:
    P: Matrix
    Q: Matrix


def key_lemma_scan(S: AffineMatrixSpace, r: int) -> SmallHyperplane | EquivRr0:
    """First hyperplane ``H`` (lexicographic) with ``dim_F V_H < d*r``.

    When no such hyperplane exists the space is equivalent to ``R(r, 0)``
    and witnesses are returned: a maximal-rank member ``A`` is brought to
    ``J_r`` and the same ``(P, Q)`` carries the whole space onto ``R(r, 0)``.
    """
    if not S.ring.is_finite:
        raise InfiniteRing("the hyperplane scan needs a finite ring")
    if not 0 < r < S.p:
        raise ValueError(f"need 0 < r < p, got r={r}, p={S.p}")
    top, A, _ = max_rank_witness(S, stop_above=r)
    if top > r:
        raise NotBoundedRank(f"member of rank {top} > {r}", witness=A)
    return _scan(S, r, A)


def _scan(S: AffineMatrixSpace, r: int, top_member: Matrix | None = None):
    ring = S.ring
    V = S.translation_space()
    bound = ring.dim * r
    for H in enumerate_hyperplanes(ring, S.p):
        dim_h = sub_v_h(V, H).dim
        if dim_h < bound:
            return SmallHyperplane(H, dim_h)
    if top_member is None:
        _, top_member, _ = max_rank_witness(S)
    cert = normal_form(top_member)
    if cert.rank != r:
        raise ContradictionWitness(f"all V_H are large but the maximal rank is {cert.rank} != {r}")
    if act_equiv(S, cert.P, cert.Q) != compression(r, 0, S.n, S.p, ring):
        raise ContradictionWitness("normalizing a maximal-rank member did not yield R(r, 0)")
    return EquivRr0(cert.P, cert.Q)


# ---------------------------------------------------------------------------
# Range-compatible homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearMapOnMatrices:
    """An F-affine map ``Mat_{n,r}(D) -> D^n`` stored by finitely many values.

    ``at_zero`` is the image of the zero matrix and ``at_basis[t]`` the image
    of the ``t``-th F-basis matrix (flattening order: entry ``(i, j)`` with
    basis element ``e_k`` sits at ``(i*r + j)*d + k``).  Images are ``n x 1``.
    """

    ring: DivisionRingSpec
    n: int
    r: int
    at_zero: Matrix
    at_basis: tuple = field(default=())

    @classmethod
    def from_callable(cls, ring: DivisionRingSpec, n: int, r: int, func) -> "LinearMapOnMatrices":
        zero = func(Matrix.zeros(ring, n, r))
        return cls(ring, n, r, zero, tuple(func(B) for B in basis_matrices(ring, n, r)))

    def __call__(self, M: Matrix) -> Matrix:
        if M.shape != (self.n, self.r):
            raise ShapeMismatch("argument has the wrong shape")
        F = self.ring.base
        out = self.at_zero
        for c, img in zip(M.flatten(), self.at_basis):
            if F.is_zero(c):
                continue
            diff = img - self.at_zero
            out = out + Matrix(self.ring, self.n, 1, [[self.ring.scale(c, e) for e in row] for row in diff.rows])
        return out


def basis_matrices(ring: DivisionRingSpec, n: int, p: int) -> list[Matrix]:
    """F-basis of ``Mat_{n,p}(D)`` in flattening order."""
    return [
        Matrix.unit(ring, n, p, i, j, ring.basis_element(k))
        for i in range(n)
        for j in range(p)
        for k in range(ring.dim)
    ]


def _in_range(M: Matrix, y: Matrix) -> bool:
    return rank(M.hstack(y)) == rank(M)


def recover_x(Fmap: LinearMapOnMatrices) -> Matrix:
    """Find ``X`` in ``D^r`` with ``F(M) == M @ X`` for every ``M``.

    The scalar for column ``j`` is read off ``F(E_{1,j})``.  Raises
    :class:`Incompatible` (carrying a witness ``M`` with ``F(M)`` outside
    ``im M``) when no such ``X`` exists.
    """
    ring, n, r = Fmap.ring, Fmap.n, Fmap.r
    if n < 2:
        raise DomainTooFlat("right-multiplication recovery needs n >= 2")
    if not Fmap.at_zero.is_zero():
        raise Incompatible("F(0) != 0: not a homomorphism", witness=Matrix.zeros(ring, n, r))
    lambdas = []
    for j in range(r):
        E = Matrix.unit(ring, n, r, 0, j)
        y = Fmap(E)
        if not _in_range(E, y):
            raise Incompatible(f"F(E_1,{j + 1}) is outside its range", witness=E)
        lambdas.append(y.rows[0][0])
    X = Matrix(ring, r, 1, [[lam] for lam in lambdas])
    basis = basis_matrices(ring, n, r)
    bad = [t for t, (B, img) in enumerate(zip(basis, Fmap.at_basis)) if B @ X != img]
    if not bad:
        return X
    d = ring.dim
    for t in bad:
        B = basis[t]
        if not _in_range(B, Fmap(B)):
            raise Incompatible("F is not range-compatible", witness=B)
        j = (t // d) % r
        for B2 in basis:
            if B2 is B or all(row[j] == ring.zero for row in B2.rows):
                continue
            M = B + B2
            if not _in_range(M, Fmap(M)):
                raise Incompatible("F is not range-compatible", witness=M)
    raise Incompatible("F is not a right multiplication", witness=None)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def classify(S: AffineMatrixSpace, r: int) -> ClassificationResult:
    """Decide the equality case of the dimension bound for a finite ring.

    Returns ``NOT_BOUNDED_RANK`` (with a member of rank ``> r``),
    ``NOT_MAXIMAL`` (dimension below ``d*n*r``) or one of the three extremal
    tags with witnesses such that ``act_equiv(S, P, Q)`` is the model space.
    """
    ring = S.ring
    if not ring.is_finite:
        raise InfiniteRing("classification needs an exact rank verdict, i.e. a finite ring")
    n, p = S.shape
    if n < p:
        raise ShapeMismatch("classify expects n >= p (transpose into the opposite ring first)")
    if not 0 <= r <= p:
        raise ValueError(f"need 0 <= r <= p, got r={r}")
    top, A, _ = max_rank_witness(S, stop_above=r)
    if top > r:
        return ClassificationResult(Tag.NOT_BOUNDED_RANK, witness=A)
    bound = ring.dim * n * r
    if S.dim < bound:
        return ClassificationResult(Tag.NOT_MAXIMAL)
    if S.dim > bound:
        raise ContradictionWitness(f"rank-{r} space of dimension {S.dim} > {bound}")
    tag, P, Q = _classify_extremal(S, r, A)
    result = ClassificationResult(tag, P, Q)
    if not verify_result(S, r, result):
        raise ContradictionWitness(f"witnesses for tag {tag.value} do not reproduce the model")
    return result


def verify_result(S: AffineMatrixSpace, r: int, result: ClassificationResult) -> bool:
    """``act_equiv(S, P, Q)`` equals the model space of the tag (any ring)."""
    if not result.tag.is_extremal:
        return False
    target = model_space(result.tag, S.ring, S.n, S.p, r)
    return act_equiv(S, result.P, result.Q) == target


def _block_diag_one(Q1: Matrix) -> Matrix:
    ring = Q1.ring
    k = Q1.n
    rows = [list(row) + [ring.zero] for row in Q1.rows] + [[ring.zero] * k + [ring.one]]
    return Matrix(ring, k + 1, k + 1, rows)


def _drop_last_column(S: AffineMatrixSpace) -> AffineMatrixSpace:
    keep = range(S.p - 1)
    return reduce(
        S.offset.submatrix(range(S.n), keep), [B.submatrix(range(S.n), keep) for B in S.basis]
    )


def _last_column_map(S: AffineMatrixSpace, r: int) -> LinearMapOnMatrices:
    """For ``S = {[N, 0, F(N)]}`` return ``F`` as a :class:`LinearMapOnMatrices`."""
    ring, n, p = S.ring, S.n, S.p
    Fld, d = ring.base, ring.dim
    head = [(i * p + j) * d + k for i in range(n) for j in range(p - 1) for k in range(d)]
    system = [[b[c] for b in S.basis_flat] for c in head]

    def value(N: Matrix) -> Matrix:
        padded = N.hstack(Matrix.zeros(ring, n, p - 1 - r)) if p - 1 > r else N
        target = padded.flatten()
        rhs = [Fld.sub(target[t], S.offset_flat[c]) for t, c in enumerate(head)]
        coeffs = field_linalg.solve(Fld, system, rhs) if system else []
        if coeffs is None:
            raise ContradictionWitness("first columns are not the compression space R(0, r)")
        return S.point(coeffs).column(p - 1)

    return LinearMapOnMatrices.from_callable(ring, n, r, value)


def _classify_extremal(S: AffineMatrixSpace, r: int, top_member: Matrix | None = None):
    """Witnesses for a rank-``r`` space of dimension exactly ``d*n*r``."""
    ring = S.ring
    n, p = S.shape
    I_n, I_p = Matrix.identity(ring, n), Matrix.identity(ring, p)
    if r == 0 or r == p:
        # S = {0}, respectively the whole space
        return Tag.COMPRESSION_COLUMNS, I_n, I_p

    scan = _scan(S, r, top_member)
    if isinstance(scan, EquivRr0):
        if n != p:
            raise ContradictionWitness("R(r,0) has dimension below d*n*r when n > p")
        return Tag.COMPRESSION_ROWS, scan.P, scan.Q
    if scan.dim != 0:
        raise ContradictionWitness("nonzero V_H at equality: this case has strictly smaller dimension")

    # move H to D^{p-1} x {0}; then no nonzero translation lives in the last column
    QH = scan.hyperplane.adapted_basis()
    S1 = act_equiv(S, I_n, QH)
    head = _drop_last_column(S1)
    if head.dim != S1.dim:
        raise ContradictionWitness("dropping the last column lost dimension although V_H = 0")
    sub_tag, P1, Q1 = _classify_extremal(head, r)
    if sub_tag is not Tag.COMPRESSION_COLUMNS:
        raise ContradictionWitness(f"first p-1 columns classified as {sub_tag.value}, expected a")
    Q1x = _block_diag_one(Q1)
    S2 = act_equiv(S1, P1, Q1x)
    Fmap = _last_column_map(S2, r)

    if (n, p, r) == (2, 2, 1) and ring.size == 2:
        P_end, Q_end, tag = _endgame_u2(Fmap)
        return tag, P_end @ P1, QH @ Q1x @ Q_end

    try:
        X = recover_x(Fmap)
    except Incompatible as exc:
        raise ContradictionWitness(f"last column map is not range-compatible: {exc}") from exc
    rows = [list(row) for row in I_p.rows]
    for i in range(r):
        rows[i][p - 1] = ring.neg(X.rows[i][0])
    P_X = Matrix(ring, p, p, rows)
    return Tag.COMPRESSION_COLUMNS, P1, QH @ Q1x @ P_X


def _endgame_u2(Fmap: LinearMapOnMatrices):
    """The ``(n, p, r, #D) = (2, 2, 1, 2)`` case: ``S = {[[x, f1], [y, f2]]}``.

    With ``F(x, y) = (alpha x + beta y + gamma, delta x + eps y + eta)`` the
    singularity of every member forces ``eps = alpha``, ``delta = eta`` and
    ``beta = gamma``.  After ``C2 <- C2 - alpha C1`` the space reads
    ``[[x, beta (y+1)], [y, delta (x+1)]]`` and the four values of
    ``(beta, delta)`` give ``R(0,1)`` or ``U2`` up to explicit operations.
    """
    ring = Fmap.ring
    F = ring.base
    f00, f10, f01 = Fmap.at_zero, Fmap.at_basis[0], Fmap.at_basis[1]
    gamma, eta = f00.rows[0][0][0], f00.rows[1][0][0]
    alpha, delta = F.sub(f10.rows[0][0][0], gamma), F.sub(f10.rows[1][0][0], eta)
    beta, eps = F.sub(f01.rows[0][0][0], gamma), F.sub(f01.rows[1][0][0], eta)
    if (eps, delta, beta) != (alpha, eta, gamma):
        raise ContradictionWitness("the last column map allows a rank-2 member")

    def mat(entries):
        return Matrix.from_entries(ring, entries)

    Q_alpha = mat([[1, F.neg(alpha)], [0, 1]])
    I2 = mat([[1, 0], [0, 1]])
    if (beta, delta) == (0, 0):
        return I2, Q_alpha, Tag.COMPRESSION_COLUMNS
    if (beta, delta) == (0, 1):
        return I2, Q_alpha, Tag.EXCEPTIONAL_U2
    if (beta, delta) == (1, 0):
        return mat([[0, 1], [1, 0]]), Q_alpha, Tag.EXCEPTIONAL_U2
    # C2 <- C2 + C1, then L1 <- L1 + L2
    return mat([[1, 1], [0, 1]]), Q_alpha @ mat([[1, 1], [0, 1]]), Tag.EXCEPTIONAL_U2
