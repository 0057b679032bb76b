"""Acceptance criteria, one test per criterion.

Each ``criterion_*`` function runs a check and returns ``(ok, detail)``.
The tests assert on ``ok``; a PASS/FAIL line per criterion is printed in
the terminal summary (see ``conftest.py``), and running this file as a
script prints the same lines.
"""

import itertools
import random
import time

import pytest

from skewflanders.census import (
    classify_extremal,
    corollary_census,
    estimate_candidates,
    extremal_spaces,
    verify_bound,
)
from skewflanders.flanders import (
    DUAL_TAG,
    Tag,
    classify,
    compression,
    model_space,
    u2_space,
    verify_result,
)
from skewflanders.matrix_core import Matrix, random_invertible, rank, regular_rank
from skewflanders.oracles import extraction_trials, rank_oracle_trials, recover_trials
from skewflanders.scalar_algebra import gf_spec, opposite, quaternion_spec
from skewflanders.space import act_equiv, dim_f, transpose_space

F2, F3, F4 = gf_spec(2), gf_spec(3), gf_spec(2, 2)
H = quaternion_spec()

RESULTS: dict = {}


def _timed(func, *args, **kwargs):
    t0 = time.perf_counter()
    out = func(*args, **kwargs)
    return out, time.perf_counter() - t0


def criterion_1():
    """No rank-r affine space of dimension d*n*r + 1, each run under 10 s."""
    parts, ok = [], True
    for ring, n, p, r in ((F2, 2, 2, 1), (F2, 3, 2, 1), (F3, 2, 2, 1)):
        rep, secs = _timed(verify_bound, ring, n, p, r)
        expected = estimate_candidates(ring.base.p, n * p * ring.dim, ring.dim * n * r + 1)
        good = rep.violations == 0 and rep.total == expected and secs < 10
        ok &= good
        parts.append(f"F{ring.size}({n},{p},{r}): {rep.total} candidates, {rep.violations} violations, {secs:.2f}s")
    return ok, "; ".join(parts)


# tag counts frozen from the brute-force orbit oracle in test_census.py
EXTREMAL_COUNTS = {
    (2, 2, 2, 1): {"a": 3, "b": 3, "c": 9},
    (3, 2, 2, 1): {"a": 4, "b": 4, "c": 0},
    (2, 3, 2, 1): {"a": 3, "b": 0, "c": 0},
}


def criterion_2():
    """Equality trichotomy with verified witnesses, each run under 30 s."""
    parts, ok = [], True
    for (q, n, p, r), expected in EXTREMAL_COUNTS.items():
        ring = gf_spec(q)
        t0 = time.perf_counter()
        rep = classify_extremal(ring, n, p, r)
        verified = 0
        for S in extremal_spaces(ring, n, p, r):
            res = classify(S, r)
            verified += res.tag.is_extremal and verify_result(S, r, res)
        secs = time.perf_counter() - t0
        good = (
            rep.violations == 0
            and rep.counts == expected
            and verified == rep.rank_bounded
            and secs < 30
        )
        ok &= good
        parts.append(f"F{q}({n},{p},{r}): {rep.counts}, {verified}/{rep.rank_bounded} verified, {secs:.2f}s")
    c2 = EXTREMAL_COUNTS[(2, 2, 2, 1)]
    ok &= c2["c"] > 0 and EXTREMAL_COUNTS[(3, 2, 2, 1)]["c"] == 0
    ok &= EXTREMAL_COUNTS[(2, 3, 2, 1)]["b"] == EXTREMAL_COUNTS[(2, 3, 2, 1)]["c"] == 0
    return ok, "; ".join(parts)


def criterion_3():
    """Rank-1 additive subgroups of Mat_2(F2) have at most 4 elements; extremal ones are (a)/(b)."""
    rep = corollary_census(2, 2, 2, 1)
    ok = (
        rep.violations == 0
        and rep.extra["max_cardinality"] == 4
        and rep.extra["larger_subgroups_rank_bounded"] == 0
        and rep.counts.get("c", 0) == 0
        and rep.counts["a"] + rep.counts["b"] == rep.rank_bounded > 0
    )
    return ok, f"counts {rep.counts}, larger subgroups {rep.extra['larger_subgroups_examined']} all refuted"


def criterion_4():
    """Extraction predicate on 10^4 seeded matrices per ring."""
    parts, ok = [], True
    for name, ring in (("F2", F2), ("F3", F3), ("F4", F4), ("H", H)):
        rep = extraction_trials(ring, 10_000, seed=7)
        ok &= rep.failures == 0 and rep.trials == 10_000 and rep.nonvacuous > 0
        parts.append(f"{name}: {rep.cases} cases, {rep.nonvacuous} nonvacuous, {rep.failures} failures")
    return ok, "; ".join(parts)


def criterion_5():
    """rank_F(regular_rep(M)) == d * rank(M): 10^4 quaternion matrices, all F2 matrices up to 3x3."""
    rep = rank_oracle_trials(H, 10_000, seed=11)
    exhaustive = failures = 0
    for n, p in itertools.product(range(1, 4), repeat=2):
        for bits in itertools.product(range(2), repeat=n * p):
            M = Matrix.from_flat(F2, n, p, bits)
            exhaustive += 1
            failures += regular_rank(M) != rank(M)
    ok = rep.failures == 0 and failures == 0
    return ok, f"quaternions {rep.trials} trials, {rep.failures} failures; F2 {exhaustive} matrices, {failures} failures"


def criterion_6():
    """recover_x returns X for M -> M X, 10^3 trials per ring."""
    parts, ok = [], True
    for name, ring in (("F2", F2), ("F3", F3), ("F4", F4), ("H", H)):
        rep = recover_trials(ring, 1_000, seed=13)
        ok &= rep.failures == 0 and rep.trials == 1_000
        parts.append(f"{name}: {rep.failures}/{rep.trials} failures")
    return ok, "; ".join(parts)


def _model_cases():
    cases = []
    for ring in (F2, F3):
        for n, p, r in ((2, 2, 1), (3, 2, 1), (3, 3, 1), (3, 3, 2)):
            cases.append((ring, Tag.COMPRESSION_COLUMNS, n, p, r))
            if n == p:
                cases.append((ring, Tag.COMPRESSION_ROWS, n, p, r))
    cases.append((F2, Tag.EXCEPTIONAL_U2, 2, 2, 1))
    return cases


def criterion_7():
    """200 seeded (P, Q): classify recovers the model tag with reproducing witnesses."""
    rng = random.Random(2024)
    cases = _model_cases()
    failures = 0
    for trial in range(200):
        ring, tag, n, p, r = cases[trial % len(cases)]
        model = model_space(tag, ring, n, p, r)
        P, _ = random_invertible(ring, n, rng)
        Q, _ = random_invertible(ring, p, rng)
        S = act_equiv(model, P, Q)
        res = classify(S, r)
        failures += not (res.tag is tag and act_equiv(S, res.P, res.Q) == model)
    return failures == 0, f"200 pairs over {len(cases)} model configurations, {failures} failures"


def criterion_8():
    """Transpose into the opposite ring swaps (a) and (b) and fixes (c), n = p in {2, 3}."""
    spaces = []
    for ring in (F2, F3):
        spaces += [(S, 1) for S in extremal_spaces(ring, 2, 2, 1)]
    rng = random.Random(88)
    for ring in (F2, F3):
        for r in (1, 2):
            for tag in (Tag.COMPRESSION_COLUMNS, Tag.COMPRESSION_ROWS):
                for _ in range(3):
                    P, _ = random_invertible(ring, 3, rng)
                    Q, _ = random_invertible(ring, 3, rng)
                    spaces.append((act_equiv(model_space(tag, ring, 3, 3, r), P, Q), r))
    failures = 0
    seen = set()
    for S, r in spaces:
        tag = classify(S, r).tag
        T = transpose_space(S)
        dual = classify(T, r)
        seen.add(tag)
        failures += not (T.ring == opposite(S.ring) and dual.tag is DUAL_TAG[tag] and verify_result(T, r, dual))
    # the quaternion models are exchanged as well, checked structurally
    Hop = opposite(H)
    for n in (2, 3):
        for r in range(n + 1):
            failures += transpose_space(compression(0, r, n, n, H)) != compression(r, 0, n, n, Hop)
    ok = failures == 0 and seen == {Tag.COMPRESSION_COLUMNS, Tag.COMPRESSION_ROWS, Tag.EXCEPTIONAL_U2}
    return ok, f"{len(spaces)} spaces, tags seen {sorted(t.value for t in seen)}, {failures} failures"


def criterion_9():
    """dim_f(R(s, t)) == d (n p - (n - s)(p - t)) for s <= n <= 4, t <= p <= 4."""
    checked = failures = 0
    for ring in (F2, H):
        d = ring.dim
        for n, p in itertools.product(range(5), repeat=2):
            for s, t in itertools.product(range(n + 1), range(p + 1)):
                checked += 1
                failures += dim_f(compression(s, t, n, p, ring)) != d * (n * p - (n - s) * (p - t))
    return failures == 0, f"{checked} (ring, s, t, n, p) cases, {failures} failures"


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def _run(number):
    ok, detail = CRITERIA[number]()
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[number] = line
    print(line)
    return ok


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    assert _run(number), RESULTS[number]


if __name__ == "__main__":
    results = [_run(k) for k in sorted(CRITERIA)]
    raise SystemExit(0 if all(results) else 1)
