import csv
import io
import json
import random
import subprocess
import sys

import pytest

from skewflanders.cli import main
from skewflanders.flanders import compression, u2_space
from skewflanders.matrix_core import Matrix, random_matrix
from skewflanders.serialize import (
    SpaceFileError,
    dump_space,
    load_space,
    loads_space,
    space_to_json,
)
from skewflanders.space import AffineMatrixSpace, reduce


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def u2_file(tmp_path):
    path = tmp_path / "u2.json"
    dump_space(u2_space(), path)
    return path


# -- serialization -------------------------------------------------------------


def test_round_trip(any_ring, tmp_path):
    rng = random.Random(9)
    for t in range(5):
        gens = [random_matrix(any_ring, 2, 3, rng, 4) for _ in range(t)]
        S = reduce(random_matrix(any_ring, 2, 3, rng, 4), gens)
        path = tmp_path / f"s{t}.json"
        dump_space(S, path)
        assert load_space(path) == S
        assert loads_space(json.dumps(space_to_json(S))) == S


def test_non_canonical_input_is_canonicalized(F2):
    obj = space_to_json(u2_space())
    obj["basis"].append(obj["basis"][0])
    obj["offset"] = [[["1"], ["0"]], [["1"], ["0"]]]
    assert loads_space(json.dumps(obj)) == u2_space()


def test_syntax_error_position():
    with pytest.raises(SpaceFileError, match="line 2, column 1"):
        loads_space('{"n": 2,\n}')


@pytest.mark.parametrize(
    "mutate,where",
    [
        (lambda o: o.pop("basis"), "missing key 'basis'"),
        (lambda o: o["basis"][1].pop(), r"\$\.basis\[1\]"),
        (lambda o: o["offset"][0][1].append("0"), r"\$\.offset\[0\]\[1\]"),
        (lambda o: o["offset"][1][0].__setitem__(0, "x"), r"\$\.offset\[1\]\[0\]"),
        (lambda o: o.__setitem__("ring", {"type": "octonions"}), r"\$\.ring"),
    ],
)
def test_structural_errors_name_the_path(mutate, where):
    obj = space_to_json(u2_space())
    mutate(obj)
    with pytest.raises(SpaceFileError, match=where):
        loads_space(json.dumps(obj))


# -- commands -------------------------------------------------------------------


def test_rank_u2(capsys, u2_file):
    code, out, _ = run(capsys, "rank", "--space", str(u2_file))
    d = json.loads(out)
    assert code == 0
    assert d["ranks"] == [1, 1, 1, 1] and d["max_rank"] == 1 and d["verdict"] == "proven"


def test_rank_refutation(capsys, tmp_path, F2):
    path = tmp_path / "full.json"
    dump_space(AffineMatrixSpace.full(F2, 2, 2), path)
    code, out, _ = run(capsys, "rank", "--space", str(path), "--r", "1")
    assert code == 2 and json.loads(out)["max_rank"] == 2


def test_rank_quaternions_records_seed(capsys, tmp_path, H):
    path = tmp_path / "h.json"
    dump_space(compression(0, 1, 2, 2, H), path)
    code, out, _ = run(capsys, "rank", "--space", str(path), "--seed", "4")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "sampled_only" and d["seed"] == 4 and d["max_rank"] == 1


def test_classify_command(capsys, u2_file, tmp_path, F2):
    code, out, _ = run(capsys, "classify", "--space", str(u2_file), "--r", "1")
    d = json.loads(out)
    assert code == 0 and d["tag"] == "c" and d["P"] is not None
    path = tmp_path / "full.json"
    dump_space(AffineMatrixSpace.full(F2, 2, 2), path)
    code, out, _ = run(capsys, "classify", "--space", str(path), "--r", "1")
    assert code == 2 and json.loads(out)["tag"] == "not_bounded"


def test_census_extremal_command(capsys):
    code, out, err = run(capsys, "census-extremal", "--ring", "gf:2", "--n", "2", "--p", "2", "--r", "1")
    d = json.loads(out)
    assert code == 0 and d["counts"]["c"] == 9
    assert "wall time" in err


def test_census_csv(capsys):
    code, out, _ = run(
        capsys, "census-bound", "--ring", "gf:3", "--n", "2", "--p", "2", "--r", "1", "--format", "csv"
    )
    (row,) = csv.DictReader(io.StringIO(out))
    assert code == 0 and row["violations"] == "0" and row["count_refuted"] == "120"
    assert json.loads(row["ring"]) == {"type": "gf", "p": 3, "k": 1}


def test_census_outputs_are_byte_identical(capsys):
    argv = ["census-bound", "--ring", "gf:2", "--n", "3", "--p", "2", "--r", "1"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--workers", "2")
    assert first == second
    argv = ["census-bound", "--ring", "gf:3", "--n", "2", "--p", "2", "--r", "1", "--mode", "randomized"]
    _, a, _ = run(capsys, *argv, "--seed", "5", "--trials", "30")
    _, b, _ = run(capsys, *argv, "--seed", "5", "--trials", "30")
    assert a == b


def test_randomized_without_seed_records_one(capsys):
    code, out, _ = run(
        capsys, "census-bound", "--ring", "gf:2", "--n", "2", "--p", "2", "--r", "1",
        "--mode", "randomized", "--trials", "10",
    )
    assert code == 0 and isinstance(json.loads(out)["seed"], int)


def test_census_corollary_command(capsys):
    code, out, _ = run(capsys, "census-corollary", "--q", "2", "--n", "2", "--p", "2", "--r", "1")
    d = json.loads(out)
    assert code == 0 and d["counts"] == {"a": 3, "b": 3, "c": 0}
    code, out, _ = run(capsys, "census-corollary", "--ring", "gf:3", "--n", "2", "--p", "2", "--r", "1")
    assert code == 0 and json.loads(out)["extra"]["q"] == 3


def test_lemma_and_oracle_checks(capsys):
    code, out, _ = run(capsys, "lemma-check", "extraction", "--ring", "quaternion_q", "--trials", "200", "--seed", "7")
    assert code == 0 and json.loads(out)["failures"] == 0
    code, out, _ = run(capsys, "lemma-check", "recover", "--ring", "gf:3", "--trials", "50", "--seed", "1")
    assert code == 0 and json.loads(out)["failures"] == 0
    code, out, _ = run(capsys, "oracle-check", "--ring", "gf:2:2", "--trials", "100", "--seed", "2")
    assert code == 0 and json.loads(out)["failures"] == 0


def test_ring_from_file(capsys, tmp_path, H):
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(H.to_json()))
    code, out, _ = run(capsys, "oracle-check", "--ring", f"file:{path}", "--trials", "20", "--seed", "2")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["census-bound", "--ring", "gf:4", "--n", "2", "--p", "2", "--r", "1"],
        ["census-bound", "--ring", "gf:2", "--n", "2", "--p", "2", "--r", "1", "--cap", "5"],
        ["census-bound", "--ring", "quaternion_q", "--n", "2", "--p", "2", "--r", "1"],
        ["census-bound", "--ring", "gf:2", "--n", "2", "--p", "3", "--r", "1"],
        ["census-extremal", "--ring", "gf:2", "--n", "2", "--p", "2", "--r", "-1"],
        ["census-corollary", "--n", "2", "--p", "2", "--r", "1"],
        ["census-corollary", "--q", "6", "--n", "2", "--p", "2", "--r", "1"],
        ["frobnicate"],
        ["rank"],
    ],
)
def test_errors_exit_one(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_malformed_space_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"ring": {"type": "gf", "p": 2},\n "n": 2,,\n}')
    code, _, err = run(capsys, "rank", "--space", str(path))
    assert code == 1 and "line 2, column" in err


def test_module_entry_point(u2_file):
    proc = subprocess.run(
        [sys.executable, "-m", "skewflanders", "classify", "--space", str(u2_file), "--r", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["tag"] == "c"
