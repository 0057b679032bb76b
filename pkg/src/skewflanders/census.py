"""Exhaustive and randomized checks of the dimension bound at desk scale.

Every F-affine subspace of ``Mat_{n,p}(D)`` of a given dimension ``k`` is
``offset + span(B)`` for a unique reduced row-echelon basis ``B`` (``k``
rows over the prime field, one per pivot pattern and assignment of the free
entries) and a unique offset vanishing on the pivot coordinates.  The
enumeration below walks exactly these pairs.

Points of the ambient space are encoded as integers (base-``q`` digits of
the flattened matrix, most significant first), so the rank of every point
is a single lookup in a precomputed table.  For ``q = 2`` this is the usual
bit-packing of the flattened vector.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import field_linalg
from .errors import CapExceeded, ContradictionWitness, InfiniteRing
from .flanders import Tag, classify
from .matrix_core import Matrix, rank
from .scalar_algebra import DivisionRingSpec, gf_spec, is_prime
from .space import AffineMatrixSpace

DEFAULT_CAP = 10**8
#: Largest ambient space whose full rank table is materialized.
RANK_TABLE_CAP = 1 << 22
#: Soft bound on the number of array cells handled per vectorized chunk.
CHUNK_CELLS = 1 << 22

TAG_KEYS = ("a", "b", "c", "not_maximal", "not_bounded", "contradiction")


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^n``."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ---------------------------------------------------------------------------
# Echelon enumeration
# ---------------------------------------------------------------------------


def _free_slots(pivots: tuple[int, ...], N: int) -> list[tuple[int, int]]:
    pset = set(pivots)
    return [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, N) if c not in pset]


def enumerate_linear_subspaces(ambient_dim: int, k: int, field) -> Iterator[tuple[tuple, ...]]:
    """Every ``k``-dimensional subspace of ``field^ambient_dim`` once, as an RREF basis.

    Order: pivot patterns lexicographically, then the free entries
    (row-major) lexicographically.
    """
    if field.size is None:
        raise InfiniteRing("subspace enumeration needs a finite field")
    if not 0 <= k <= ambient_dim:
        raise ValueError(f"need 0 <= k <= {ambient_dim}")
    elems = list(field.elements())
    for pivots in itertools.combinations(range(ambient_dim), k):
        slots = _free_slots(pivots, ambient_dim)
        for values in itertools.product(elems, repeat=len(slots)):
            rows = [[field.zero] * ambient_dim for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = field.one
            for (i, c), v in zip(slots, values):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def _coset_offsets(pivots, N, field):
    free = [c for c in range(N) if c not in set(pivots)]
    for values in itertools.product(list(field.elements()), repeat=len(free)):
        v = [field.zero] * N
        for c, x in zip(free, values):
            v[c] = x
        yield v


def enumerate_affine_subspaces(ring: DivisionRingSpec, n: int, p: int, dim_f: int) -> Iterator[AffineMatrixSpace]:
    """Every F-affine subspace of ``Mat_{n,p}(D)`` of F-dimension ``dim_f`` once."""
    if not ring.is_finite:
        raise InfiniteRing("affine subspace enumeration needs a finite ring")
    F = ring.base
    N = n * p * ring.dim
    for basis in enumerate_linear_subspaces(N, dim_f, F):
        pivots = [row.index(F.one) for row in basis]
        for off in _coset_offsets(pivots, N, F):
            yield AffineMatrixSpace(ring, n, p, off, basis, pivots)


# ---------------------------------------------------------------------------
# Vectorized engine over a prime base field
# ---------------------------------------------------------------------------


class _Ambient:
    """Rank table and echelon machinery for ``Mat_{n,p}(D)`` over ``F_q``, q prime."""

    def __init__(self, ring: DivisionRingSpec, n: int, p: int):
        if not ring.is_finite:
            raise InfiniteRing("census needs a finite ring")
        if ring.base.kind != "prime":
            raise ValueError("census needs a division ring over a prime field (use gf_spec)")
        self.ring, self.n, self.p = ring, n, p
        self.q = ring.base.p
        self.N = n * p * ring.dim
        if self.q**self.N > RANK_TABLE_CAP:
            raise CapExceeded(f"ambient space has {self.q}^{self.N} points", self.q**self.N)
        self.weights = self.q ** np.arange(self.N - 1, -1, -1, dtype=np.int64)
        self.rank_table = self._rank_table()

    def _rank_table(self) -> np.ndarray:
        ring, n, p = self.ring, self.n, self.p
        table = np.empty(self.q**self.N, dtype=np.int8)
        for idx, vec in enumerate(itertools.product(range(self.q), repeat=self.N)):
            table[idx] = rank(Matrix.from_flat(ring, n, p, vec))
        return table

    def grid(self, m: int) -> np.ndarray:
        """All vectors of ``F_q^m`` in lexicographic order, shape ``(q^m, m)``."""
        if m == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(itertools.product(range(self.q), repeat=m)), dtype=np.int64)

    def pattern_candidates(self, pivots, affine: bool):
        """Yield ``(bases, offsets, max_ranks)`` chunks for one pivot pattern.

        ``max_ranks[b, o]`` is the largest rank in ``offsets[o] + span(bases[b])``.
        """
        q, N, k = self.q, self.N, len(pivots)
        slots = _free_slots(pivots, N)
        coeffs = self.grid(k)
        if affine:
            free = [c for c in range(N) if c not in set(pivots)]
            offsets = np.zeros((q ** len(free), N), dtype=np.int64)
            offsets[:, free] = self.grid(len(free))
        else:
            offsets = np.zeros((1, N), dtype=np.int64)
        n_free = q ** len(slots)
        per_basis = len(offsets) * len(coeffs) * N
        step = max(1, CHUNK_CELLS // max(per_basis, 1))
        for start in range(0, n_free, step):
            stop = min(n_free, start + step)
            values = self._free_values(len(slots), start, stop)
            bases = np.zeros((stop - start, k, N), dtype=np.int64)
            for i, pc in enumerate(pivots):
                bases[:, i, pc] = 1
            for s, (i, c) in enumerate(slots):
                bases[:, i, c] = values[:, s]
            span = np.einsum("ck,bkn->bcn", coeffs, bases)
            pts = (span[:, None, :, :] + offsets[None, :, None, :]) % q
            ranks = self.rank_table[pts @ self.weights]
            yield bases, offsets, ranks.max(axis=-1)

    def _free_values(self, m: int, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.empty((stop - start, m), dtype=np.int64)
        for s in range(m - 1, -1, -1):
            out[:, s] = idx % self.q
            idx //= self.q
        return out

    def space(self, basis: np.ndarray, offset: np.ndarray, pivots) -> AffineMatrixSpace:
        return AffineMatrixSpace(
            self.ring, self.n, self.p, [int(x) for x in offset],
            [[int(x) for x in row] for row in basis], pivots,
        )


@lru_cache(maxsize=8)
def _ambient(ring: DivisionRingSpec, n: int, p: int) -> _Ambient:
    return _Ambient(ring, n, p)


def _scan_patterns(args):
    """Worker: rank-bounded candidates for a slice of pivot patterns."""
    ring, n, p, k, r, affine, patterns = args
    amb = _ambient(ring, n, p)
    total = 0
    found = []
    for pivots in patterns:
        for bases, offsets, maxr in amb.pattern_candidates(pivots, affine):
            total += maxr.size
            for b, o in zip(*np.nonzero(maxr <= r)):
                found.append((pivots, bases[b].tolist(), offsets[o].tolist()))
    return total, found


def _exhaustive(ring, n, p, k, r, affine: bool, workers: int):
    amb = _ambient(ring, n, p)
    if k > amb.N:
        return 0, []
    patterns = list(itertools.combinations(range(amb.N), k))
    if workers <= 1 or len(patterns) < 2:
        return _scan_patterns((ring, n, p, k, r, affine, patterns))
    slices = [patterns[w::workers] for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_scan_patterns, [(ring, n, p, k, r, affine, s) for s in slices]))
    total = sum(t for t, _ in results)
    order = {pv: i for i, pv in enumerate(patterns)}
    found = sorted((f for _, fs in results for f in fs), key=lambda f: (order[f[0]], f[1], f[2]))
    return total, found


def _randomized(ring, n, p, k, r, affine: bool, samples: int, seed: int):
    amb = _ambient(ring, n, p)
    if k > amb.N:
        return 0, []
    F = ring.base
    rng = random.Random(seed)
    found = []
    for _ in range(samples):
        while True:
            rows = [[rng.randrange(amb.q) for _ in range(amb.N)] for _ in range(k)]
            R, pivots = field_linalg.rref(F, rows, amb.N)
            if len(pivots) == k:
                break
        off = [rng.randrange(amb.q) for _ in range(amb.N)] if affine else [0] * amb.N
        off = field_linalg.reduce_vector(F, R, pivots, off)
        S = AffineMatrixSpace(ring, n, p, off, R, pivots)
        coeffs = amb.grid(k)
        pts = (coeffs @ np.array(R, dtype=np.int64).reshape(k, amb.N) + np.array(off)) % amb.q
        if amb.rank_table[pts @ amb.weights].max() <= r:
            found.append((tuple(pivots), R, off))
    return samples, found


def estimate_candidates(q: int, N: int, k: int, affine: bool = True) -> int:
    if k > N:
        return 0
    return gaussian_binomial(N, k, q) * (q ** (N - k) if affine else 1)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class CensusReport:
    """Outcome of one census run.

    ``counts`` maps classification tags (and ``"refuted"`` for bound checks)
    to exact counts.  ``wall_time`` is kept out of the serialized forms by
    default so that reports are reproducible byte for byte.
    """

    kind: str
    ring: dict
    n: int
    p: int
    r: int
    dim: int
    mode: str
    seed: int | None
    total: int
    rank_bounded: int
    violations: int
    counts: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.violations == 0 and not self.counts.get("contradiction")

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "ring": self.ring,
            "n": self.n,
            "p": self.p,
            "r": self.r,
            "dim": self.dim,
            "mode": self.mode,
            "seed": self.seed,
            "total": self.total,
            "rank_bounded": self.rank_bounded,
            "violations": self.violations,
            "counts": dict(sorted(self.counts.items())),
        }
        if self.extra:
            out["extra"] = dict(sorted(self.extra.items()))
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def to_csv(self, timing: bool = False) -> str:
        d = self.to_dict(timing)
        counts = d.pop("counts")
        extra = d.pop("extra", {})
        d["ring"] = json.dumps(d["ring"], sort_keys=True)
        for key in sorted(counts):
            d[f"count_{key}"] = counts[key]
        for key in sorted(extra):
            d[key] = extra[key]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(d), lineterminator="\n")
        writer.writeheader()
        writer.writerow(d)
        return buf.getvalue()


def _check_params(ring, n, p, r):
    if not ring.is_finite:
        raise InfiniteRing("census needs a finite ring")
    if not n >= p >= r >= 0:
        raise ValueError(f"need n >= p >= r >= 0, got n={n}, p={p}, r={r}")


def _guard(ring, n, p, k, affine, cap):
    N = n * p * ring.dim
    est = estimate_candidates(ring.base.p, N, k, affine)
    if est > cap:
        raise CapExceeded(f"{est} candidate spaces exceed the cap {cap}; use randomized mode", est)
    return est


def extremal_spaces(
    ring: DivisionRingSpec, n: int, p: int, r: int, *, linear: bool = False,
    cap: int = DEFAULT_CAP, workers: int = 1,
) -> list[AffineMatrixSpace]:
    """All rank-``r`` affine (or linear) spaces of F-dimension ``d*n*r``, in enumeration order."""
    _check_params(ring, n, p, r)
    k = ring.dim * n * r
    _guard(ring, n, p, k, not linear, cap)
    _, found = _exhaustive(ring, n, p, k, r, not linear, workers)
    amb = _ambient(ring, n, p)
    return [amb.space(np.array(b), np.array(o), pv) for pv, b, o in found]


def _classify_found(ring, n, p, r, found):
    amb = _ambient(ring, n, p)
    counts = Counter({key: 0 for key in ("a", "b", "c")})
    for pivots, basis, off in found:
        S = amb.space(np.array(basis), np.array(off), pivots)
        try:
            counts[classify(S, r).tag.value] += 1
        except ContradictionWitness:
            counts["contradiction"] += 1
    return dict(counts)


def verify_bound(
    ring: DivisionRingSpec,
    n: int,
    p: int,
    r: int,
    mode: str = "exhaustive",
    *,
    seed: int | None = None,
    samples: int = 1000,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> CensusReport:
    """Look for rank-``r`` affine spaces of dimension ``d*n*r + 1``.

    Every such candidate must contain a matrix of rank above ``r``; the ones
    that do not are counted as ``violations``.
    """
    _check_params(ring, n, p, r)
    t0 = time.perf_counter()
    k = ring.dim * n * r + 1
    if mode == "exhaustive":
        _guard(ring, n, p, k, True, cap)
        total, found = _exhaustive(ring, n, p, k, r, True, workers)
    elif mode == "randomized":
        if seed is None:
            raise ValueError("randomized mode needs an explicit seed")
        total, found = _randomized(ring, n, p, k, r, True, samples, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return CensusReport(
        kind="bound", ring=ring.to_json(), n=n, p=p, r=r, dim=k, mode=mode,
        seed=seed if mode == "randomized" else None, total=total, rank_bounded=len(found),
        violations=len(found), counts={"refuted": total - len(found)},
        wall_time=time.perf_counter() - t0,
    )


def classify_extremal(
    ring: DivisionRingSpec,
    n: int,
    p: int,
    r: int,
    *,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> CensusReport:
    """Classify every rank-``r`` affine space of dimension exactly ``d*n*r``.

    Any ``not_maximal`` or ``contradiction`` outcome among those spaces is a
    violation of the equality cases.
    """
    _check_params(ring, n, p, r)
    t0 = time.perf_counter()
    k = ring.dim * n * r
    _guard(ring, n, p, k, True, cap)
    total, found = _exhaustive(ring, n, p, k, r, True, workers)
    counts = _classify_found(ring, n, p, r, found)
    bad = counts.get("not_maximal", 0) + counts.get("not_bounded", 0) + counts.get("contradiction", 0)
    return CensusReport(
        kind="extremal", ring=ring.to_json(), n=n, p=p, r=r, dim=k, mode="exhaustive",
        seed=None, total=total, rank_bounded=len(found), violations=bad, counts=counts,
        wall_time=time.perf_counter() - t0,
    )


def prime_power(q: int) -> tuple[int, int]:
    for base in range(2, q + 1):
        if q % base == 0:
            if not is_prime(base):
                break
            k, m = 0, q
            while m % base == 0:
                m //= base
                k += 1
            if m == 1:
                return base, k
            break
    raise ValueError(f"{q} is not a prime power")


def corollary_census(
    q: int, n: int, p: int, r: int, *, cap: int = DEFAULT_CAP, workers: int = 1
) -> CensusReport:
    """Additive subgroups of ``Mat_{n,p}(F_q)`` of rank at most ``r``.

    Subgroups are the subspaces over the prime field.  None of cardinality
    above ``q^{nr}`` may be rank-bounded (``violations``), and those of
    cardinality exactly ``q^{nr}`` must classify as ``a`` or ``b``.
    """
    base, k_deg = prime_power(q)
    ring = gf_spec(base, k_deg)
    _check_params(ring, n, p, r)
    t0 = time.perf_counter()
    k = ring.dim * n * r
    _guard(ring, n, p, k, False, cap)
    _guard(ring, n, p, k + 1, False, cap)
    total_up, found_up = _exhaustive(ring, n, p, k + 1, r, False, workers)
    total, found = _exhaustive(ring, n, p, k, r, False, workers)
    counts = _classify_found(ring, n, p, r, found)
    bad = sum(counts.get(key, 0) for key in ("c", "not_maximal", "not_bounded", "contradiction"))
    return CensusReport(
        kind="corollary", ring=ring.to_json(), n=n, p=p, r=r, dim=k, mode="exhaustive",
        seed=None, total=total, rank_bounded=len(found), violations=len(found_up) + bad,
        counts=counts,
        extra={
            "q": q,
            "max_cardinality": q ** (n * r),
            "larger_subgroups_examined": total_up,
            "larger_subgroups_rank_bounded": len(found_up),
        },
        wall_time=time.perf_counter() - t0,
    )
