"""JSON forms of rings, matrices, spaces and classification results.

Matrix: row-major nested list; each entry is a list of ``d`` strings, one
per coordinate over F (``"3"`` for finite fields, ``"a/b"`` for rationals).

Space file::

    {"ring": {"type": "gf", "p": 2, "k": 1}, "n": 2, "p": 2,
     "offset": [[["0"], ["0"]], [["0"], ["1"]]],
     "basis": [[[["1"], ["0"]], [["0"], ["1"]]], ...]}
"""

from __future__ import annotations

import json
from pathlib import Path

from .flanders import ClassificationResult
from .matrix_core import Matrix
from .scalar_algebra import DivisionRingSpec, ring_from_json
from .space import AffineMatrixSpace, reduce


class SpaceFileError(ValueError):
    """Malformed input; the message names the line/column or JSON path."""


def matrix_to_json(M: Matrix) -> list:
    F = M.ring.base
    return [[[F.to_str(c) for c in e] for e in row] for row in M.rows]


def matrix_from_json(ring: DivisionRingSpec, obj, n: int, p: int, where: str = "$") -> Matrix:
    F, d = ring.base, ring.dim
    if not isinstance(obj, list) or len(obj) != n:
        raise SpaceFileError(f"{where}: expected a list of {n} rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != p:
            raise SpaceFileError(f"{where}[{i}]: expected a row of {p} scalars")
        out_row = []
        for j, e in enumerate(row):
            if not isinstance(e, list) or len(e) != d:
                raise SpaceFileError(f"{where}[{i}][{j}]: expected {d} coordinates")
            try:
                out_row.append(tuple(F.from_str(str(c)) for c in e))
            except (ValueError, ZeroDivisionError) as exc:
                raise SpaceFileError(f"{where}[{i}][{j}]: bad field element ({exc})") from exc
        rows.append(out_row)
    return Matrix(ring, n, p, rows)


def space_to_json(S: AffineMatrixSpace) -> dict:
    return {
        "ring": S.ring.to_json(),
        "n": S.n,
        "p": S.p,
        "offset": matrix_to_json(S.offset),
        "basis": [matrix_to_json(B) for B in S.basis],
    }


def space_from_json(obj) -> AffineMatrixSpace:
    if not isinstance(obj, dict):
        raise SpaceFileError("$: expected an object")
    for key in ("ring", "n", "p", "offset", "basis"):
        if key not in obj:
            raise SpaceFileError(f"$: missing key {key!r}")
    try:
        ring = ring_from_json(obj["ring"])
    except (KeyError, ValueError, TypeError) as exc:
        raise SpaceFileError(f"$.ring: {exc}") from exc
    n, p = obj["n"], obj["p"]
    if not (isinstance(n, int) and isinstance(p, int) and n >= 0 and p >= 0):
        raise SpaceFileError("$.n/$.p: expected non-negative integers")
    if not isinstance(obj["basis"], list):
        raise SpaceFileError("$.basis: expected a list of matrices")
    offset = matrix_from_json(ring, obj["offset"], n, p, "$.offset")
    gens = [matrix_from_json(ring, B, n, p, f"$.basis[{t}]") for t, B in enumerate(obj["basis"])]
    return reduce(offset, gens)


def loads_space(text: str) -> AffineMatrixSpace:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpaceFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return space_from_json(obj)


def load_space(path) -> AffineMatrixSpace:
    try:
        return loads_space(Path(path).read_text())
    except SpaceFileError as exc:
        raise SpaceFileError(f"{path}: {exc}") from exc


def dump_space(S: AffineMatrixSpace, path) -> None:
    Path(path).write_text(json.dumps(space_to_json(S), indent=1) + "\n")


def result_to_json(result: ClassificationResult) -> dict:
    return {
        "tag": result.tag.value,
        "P": None if result.P is None else matrix_to_json(result.P),
        "Q": None if result.Q is None else matrix_to_json(result.Q),
        "witness": None if result.witness is None else matrix_to_json(result.witness),
    }
