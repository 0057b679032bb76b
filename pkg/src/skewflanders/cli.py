"""Command-line front end.

Exit codes: 0 when everything checked out, 2 when a refutation was found
(the report then carries the witness), 1 on usage or runtime errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import census, oracles
from .errors import CapExceeded, ContradictionWitness, SkewFlandersError
from .flanders import Tag, classify
from .matrix_core import rank
from .scalar_algebra import ring_from_json, parse_ring
from .serialize import SpaceFileError, load_space, matrix_to_json, result_to_json
from .space import max_rank_witness

EXIT_OK, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2
#: Largest space whose members are listed one by one by ``rank``.
RANK_LISTING_CAP = 4096


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _ring(text: str):
    if text.startswith("file:"):
        path = Path(text[5:])
        try:
            return ring_from_json(json.loads(path.read_text()))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return parse_ring(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _seed(args) -> int:
    if args.seed is None:
        args.seed = random.SystemRandom().randrange(2**32)
    return args.seed


def _emit(payload: dict, fmt: str = "json", csv_text: str | None = None) -> None:
    if fmt == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def cmd_rank(args) -> int:
    S = load_space(args.space)
    payload = {"n": S.n, "p": S.p, "dim_f": S.dim}
    size = S.cardinality()
    if size is not None and size <= RANK_LISTING_CAP:
        payload["ranks"] = [rank(M) for M in S.points()]
    top, witness, verdict = max_rank_witness(S, seed=_seed(args) if not S.ring.is_finite else 0)
    payload.update(max_rank=top, verdict=verdict.value, witness=matrix_to_json(witness))
    if not S.ring.is_finite:
        payload["seed"] = args.seed
    _emit(payload)
    return EXIT_REFUTED if args.r is not None and top > args.r else EXIT_OK


def cmd_classify(args) -> int:
    S = load_space(args.space)
    try:
        result = classify(S, args.r)
    except ContradictionWitness as exc:
        _emit({"tag": "contradiction", "message": str(exc)})
        return EXIT_REFUTED
    payload = {"n": S.n, "p": S.p, "r": args.r, "dim_f": S.dim, **result_to_json(result)}
    _emit(payload)
    return EXIT_REFUTED if result.tag is Tag.NOT_BOUNDED_RANK else EXIT_OK


def _report(rep, args) -> int:
    print(f"wall time: {rep.wall_time:.3f} s", file=sys.stderr)
    _emit(rep.to_dict(), args.format, rep.to_csv())
    return EXIT_OK if rep.ok else EXIT_REFUTED


def cmd_census_bound(args) -> int:
    ring = _ring(args.ring)
    seed = _seed(args) if args.mode == "randomized" else None
    rep = census.verify_bound(
        ring, args.n, args.p, args.r, args.mode, seed=seed, samples=args.trials,
        cap=args.cap, workers=args.workers,
    )
    return _report(rep, args)


def cmd_census_extremal(args) -> int:
    ring = _ring(args.ring)
    rep = census.classify_extremal(ring, args.n, args.p, args.r, cap=args.cap, workers=args.workers)
    return _report(rep, args)


def cmd_census_corollary(args) -> int:
    q = args.q if args.q is not None else _ring(args.ring).size
    if q is None:
        raise UsageError("census-corollary needs a finite field")
    rep = census.corollary_census(q, args.n, args.p, args.r, cap=args.cap, workers=args.workers)
    return _report(rep, args)


def cmd_lemma_check(args) -> int:
    ring = _ring(args.ring)
    seed = _seed(args)
    if args.lemma == "extraction":
        rep = oracles.extraction_trials(ring, args.trials, seed, args.max_size)
    else:
        rep = oracles.recover_trials(ring, args.trials, seed)
    _emit(rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_REFUTED


def cmd_oracle_check(args) -> int:
    ring = _ring(args.ring)
    rep = oracles.rank_oracle_trials(ring, args.trials, _seed(args), args.max_size)
    _emit(rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skewflanders", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ring_opt(p, required=True):
        p.add_argument("--ring", required=required, help="gf:p[:k] | quaternion_q | file:<path>")

    def shape_opts(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--r", type=int, required=True)

    def census_opts(p):
        p.add_argument("--cap", type=int, default=census.DEFAULT_CAP)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("rank", help="ranks of the members of a space")
    p.add_argument("--space", required=True)
    p.add_argument("--r", type=int, help="exit 2 if some member has rank above r")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("classify", help="classify a space against the bound d*n*r")
    p.add_argument("--space", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census-bound", help="no rank-r space of dimension d*n*r + 1")
    ring_opt(p)
    shape_opts(p)
    p.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=1000)
    census_opts(p)
    p.set_defaults(func=cmd_census_bound)

    p = sub.add_parser("census-extremal", help="classify all extremal rank-r spaces")
    ring_opt(p)
    shape_opts(p)
    census_opts(p)
    p.set_defaults(func=cmd_census_extremal)

    p = sub.add_parser("census-corollary", help="rank-r additive subgroups over F_q")
    ring_opt(p, required=False)
    p.add_argument("--q", type=int)
    shape_opts(p)
    census_opts(p)
    p.set_defaults(func=cmd_census_corollary)

    p = sub.add_parser("lemma-check", help="randomized lemma oracles")
    p.add_argument("lemma", choices=("extraction", "recover"))
    ring_opt(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-size", type=int, default=4)
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("oracle-check", help="elimination rank vs regular representation")
    ring_opt(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-size", type=int, default=4)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def _validate(args) -> None:
    for name in ("n", "p", "r", "trials", "cap", "workers", "max_size", "q"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non-negative")
    if getattr(args, "workers", 1) == 0:
        raise UsageError("--workers must be at least 1")
    if args.command == "census-corollary" and args.ring is None and args.q is None:
        raise UsageError("census-corollary needs --ring or --q")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except (UsageError, SpaceFileError, CapExceeded) as exc:
        print(f"skewflanders: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (SkewFlandersError, ValueError) as exc:
        print(f"skewflanders: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
