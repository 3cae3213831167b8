import io
import json
import math
import re

import jsonschema
import pytest

from submersion_lab.cli import EXIT_EVAL, EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_RANK, main
from submersion_lab.report import load_schema

FAST = ["--points", "3", "--dirs", "16"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def map_file(tmp_path):
    def write(text, name="m.map"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def test_classify_headline():
    code, out, _ = run("classify", "--builtin", "ex-r4-axes", *FAST)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "almost h-conformal slant: θ_I=0, θ_J=π/2, θ_K=π/2, λ=e^2"


def test_classify_json_validates_and_matches_text():
    code, js, _ = run("classify", "--builtin", "ex-r4-sixth", "--format", "json", *FAST)
    assert code == EXIT_OK
    report = json.loads(js)
    jsonschema.validate(report, load_schema())
    _, text, _ = run("classify", "--builtin", "ex-r4-sixth", *FAST)
    for k, v in report["classification"]["angles"].items():
        assert f"θ_{k} = {v!r} rad" in text
    assert repr(report["classification"]["dilation"]["mean"]) in text
    assert report["classification"]["angles"]["I"] == pytest.approx(math.pi / 6, abs=1e-9)


def test_verify_json_is_byte_identical_and_valid():
    argv = ("verify", "--builtin", "holo-z2", "--format", "json", *FAST)
    code, a, _ = run(*argv)
    _, b, _ = run(*argv)
    assert code == EXIT_OK and a == b
    report = json.loads(a)
    jsonschema.validate(report, load_schema())
    assert report["summary"]["ok"] and len(report["theorems"]) == 10


def test_verify_subset_and_unknown_theorem():
    code, out, _ = run("verify", "--builtin", "ex-r4-axes", "--theorems", "T-INT,T-MIN",
                       "--format", "json", *FAST)
    assert code == EXIT_OK
    assert [t["id"] for t in json.loads(out)["theorems"]] == ["T-INT", "T-MIN"]
    code, out, err = run("verify", "--builtin", "ex-r4-axes", "--theorems", "T-BOGUS")
    assert code == EXIT_INPUT and out == "" and "unknown theorem id" in err


def test_verify_failure_exit_code(map_file):
    path = map_file("dim 4 -> 2\nf1 = x1\nf2 = 2*x2\n")
    code, out, _ = run("verify", "--map", path, *FAST)
    assert code == EXIT_FAILED
    assert "not a horizontally conformal submersion" in out


def test_syntax_error_reports_location(map_file):
    path = map_file("dim 4 -> 2\nf1 = x1 +\nf2 = x2\n")
    code, out, err = run("classify", "--map", path)
    assert code == EXIT_INPUT and out == ""
    assert "^" in err and "line 2, column 10" in err


@pytest.mark.parametrize("argv", [
    ("classify", "--builtin", "no-such-example"),
    ("classify", "--builtin", "ex-r4-axes", "--points", "0"),
    ("classify", "--builtin", "ex-r4-axes", "--box", "1:0"),
    ("classify", "--builtin", "ex-r4-axes", "--box", "nonsense"),
    ("classify", "--builtin", "ex-r4-angles", "--param", "gamma=1"),
    ("classify", "--builtin", "ex-r4-angles", "--param", "alpha"),
    ("classify", "--map", "/nonexistent/file.map"),
    ("frobnicate",),
    (),
])
def test_input_errors(argv):
    code, out, _ = run(*argv)
    assert code == EXIT_INPUT and out == ""


def test_rank_failure_exit_code(map_file):
    path = map_file("dim 4 -> 2\nf1 = x1\nf2 = x1\n")
    assert run("classify", "--map", path, *FAST)[0] == EXIT_RANK


def test_evaluation_failure_exit_code(map_file):
    path = map_file("dim 4 -> 2\nf1 = sqrt(x1 - 5)\nf2 = x2\n")
    assert run("classify", "--map", path, *FAST)[0] == EXIT_EVAL


def test_param_and_box(map_file):
    code, out, _ = run("classify", "--builtin", "ex-r4-angles", "--param", "alpha=pi/4",
                       "--param", "beta=pi/4", "--box=-0.5:0.5", "--format", "json", *FAST)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["map"]["params"]["alpha"] == pytest.approx(math.pi / 4)
    assert report["plan"]["box"] == [[-0.5, 0.5]] * 4
    # α + β = π/2, so θ_I = 0 and θ_K = π/2
    assert report["classification"]["angles"]["I"] == pytest.approx(0, abs=1e-9)


def test_seed_env_override(monkeypatch):
    argv = ("classify", "--builtin", "holo-z2", "--format", "json", *FAST)
    _, plain, _ = run(*argv)
    monkeypatch.setenv("SUBMERSION_LAB_SEED", "7")
    _, seeded, _ = run(*argv)
    assert json.loads(seeded)["plan"]["seed"] == 7
    assert json.loads(plain)["classification"]["dilation"] != \
        json.loads(seeded)["classification"]["dilation"]
    monkeypatch.setenv("SUBMERSION_LAB_SEED", "x")
    assert run(*argv)[0] == EXIT_INPUT


def test_examples_listing_is_stable():
    code, a, _ = run("examples")
    _, b, _ = run("examples")
    assert code == EXIT_OK and a == b
    assert re.search(r"ex-r4-sixth\n.*\n  angles:   θ_I = π/6, θ_J = π/2, θ_K = π/3", a)
    _, js, _ = run("examples", "--format", "json")
    rows = {r["id"]: r for r in json.loads(js)}
    assert rows["ex-r8-diag"]["dilation"] == "λ = e^4"
    assert rows["ex-r4-angles"]["params"] == {"alpha": 0.3, "beta": 0.4}
    assert not rows["holo-z2"]["published"]
