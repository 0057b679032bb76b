"""Seeded randomized property checks shared by the CLI and the test suite."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .errors import Incompatible
from .flanders import LinearMapOnMatrices, extraction_predicate, recover_x
from .matrix_core import random_matrix, random_matrix_of_rank, rank, regular_rank
from .scalar_algebra import DivisionRingSpec

#: Coefficient height for random rational entries.
TRIAL_HEIGHT = 5


@dataclass
class TrialReport:
    check: str
    ring: dict
    seed: int
    trials: int
    cases: int
    failures: int
    nonvacuous: int = 0
    first_failure: list | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return asdict(self)


def extraction_trials(ring: DivisionRingSpec, trials: int, seed: int, max_size: int = 4) -> TrialReport:
    """Run the extraction predicate on random low-rank matrices, every ``r`` in range.

    Matrices are products ``L @ R`` of random factors, so the hypothesis of
    the lemma holds for a good share of the ``(M, r)`` pairs (``nonvacuous``).
    """
    rng = random.Random(seed)
    E = None
    cases = failures = nonvacuous = 0
    first = None
    for _ in range(trials):
        n, p = rng.randint(1, max_size), rng.randint(1, max_size)
        s = rng.randint(0, min(n, p))
        M = random_matrix_of_rank(ring, n, p, s, rng, TRIAL_HEIGHT)
        rk = rank(M)
        E = M.unit(ring, n, p, n - 1, p - 1)
        rk_shift = rank(M + E)
        for r in range(0, min(n, p) + 1):
            cases += 1
            if rk <= r and rk_shift <= r:
                nonvacuous += 1
            if not extraction_predicate(M, r):
                failures += 1
                if first is None:
                    first = [repr(M), r]
    return TrialReport("extraction", ring.to_json(), seed, trials, cases, failures, nonvacuous, first)


def rank_oracle_trials(ring: DivisionRingSpec, trials: int, seed: int, max_size: int = 4) -> TrialReport:
    """Compare elimination rank with ``rank_F(regular_rep(M)) / d``."""
    rng = random.Random(seed)
    failures = 0
    first = None
    for _ in range(trials):
        n, p = rng.randint(1, max_size), rng.randint(1, max_size)
        s = rng.randint(0, min(n, p))
        M = random_matrix_of_rank(ring, n, p, s, rng, TRIAL_HEIGHT) if rng.random() < 0.5 else random_matrix(
            ring, n, p, rng, TRIAL_HEIGHT
        )
        if regular_rank(M) != ring.dim * rank(M):
            failures += 1
            if first is None:
                first = [repr(M)]
    return TrialReport("rank_oracle", ring.to_json(), seed, trials, trials, failures, trials, first)


def recover_trials(ring: DivisionRingSpec, trials: int, seed: int, ns=(2, 3, 4), rs=(1, 2)) -> TrialReport:
    """Recover ``X`` from the map ``M -> M @ X`` for random ``X``."""
    rng = random.Random(seed)
    failures = 0
    first = None
    for _ in range(trials):
        n, r = rng.choice(ns), rng.choice(rs)
        X = random_matrix(ring, r, 1, rng, TRIAL_HEIGHT)
        Fmap = LinearMapOnMatrices.from_callable(ring, n, r, lambda M, X=X: M @ X)
        try:
            ok = recover_x(Fmap) == X
        except Incompatible:
            ok = False
        if not ok:
            failures += 1
            if first is None:
                first = [repr(X), n, r]
    return TrialReport("recover_x", ring.to_json(), seed, trials, trials, failures, trials, first)
