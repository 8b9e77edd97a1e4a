import csv
import io
import json

import pytest

from evenwilf import __version__
from evenwilf.cli import main
from evenwilf.verify import REGISTRY


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_no_arguments_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 1
    assert "usage" in err


def test_help_and_version_exit_zero(capsys):
    assert run(capsys, "--help")[0] == 0
    code, out, _ = run(capsys, "--version")
    assert code == 0 and __version__ in out
    assert run(capsys, "count", "--help")[0] == 0


def test_count_table(capsys):
    code, out, _ = run(capsys, "count", "321", "--shape", "3,3,3")
    assert code == 0
    last = out.strip().splitlines()[-1].split()
    assert last == ["321", "3,3,3", "5", "3", "2"]


def test_count_csv_and_json_agree(capsys):
    code, out, _ = run(capsys, "count", "321", "--n", "6", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["pattern", "n", "total", "even", "odd"]
    assert rows[1] == ["321", "6", "132", "66", "66"]
    code, out, _ = run(capsys, "count", "321", "--n", "6", "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "pattern": "321",
        "n": 6,
        "total": 132,
        "even": 66,
        "odd": 66,
    }


def test_count_output_is_deterministic(capsys):
    a = run(capsys, "count", "1234", "--n", "7", "--format", "json")
    b = run(capsys, "count", "1234", "--n", "7", "--format", "json")
    assert a == b
    a = run(capsys, "classify", "3", "--max-n", "6", "--format", "csv")
    b = run(capsys, "classify", "3", "--max-n", "6", "--format", "csv")
    assert a == b


def test_count_usage_errors(capsys):
    assert run(capsys, "count", "321")[0] == 1  # needs --n or --shape
    assert run(capsys, "count", "321", "--n", "3", "--shape", "3,3,3")[0] == 1
    code, _, err = run(capsys, "count", "331", "--n", "3")
    assert code == 1 and "error" in err


def test_count_budget_exit_code(capsys):
    code, _, err = run(capsys, "count", "123", "--n", "14")
    assert code == 3
    assert "budget" in err
    assert run(capsys, "count", "21", "--n", "14", "--max-n", "14")[0] == 0


def test_classify_table_layout(capsys):
    code, out, _ = run(capsys, "classify", "3", "--max-n", "8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split()[:4] == ["pattern", "block", "group", "basis"]
    body = [l for l in lines[2:] if l and not set(l) <= {"-", ".", " "}]
    assert len(body) == 6  # six patterns
    solid = [l for l in lines[2:] if set(l) == {"-"}]
    assert len(solid) == 1  # one separator between the two classes


def test_classify_csv(capsys):
    code, out, _ = run(capsys, "classify", "3", "--max-n", "8", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:4] == ["pattern", "block", "group", "basis"]
    got = {(r[0], r[1]) for r in rows[1:]}
    assert got == {
        ("123", "1"), ("231", "1"), ("312", "1"),
        ("132", "2"), ("213", "2"), ("321", "2"),
    }


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "2", "--max-n", "5", "--format", "json")
    data = json.loads(out)
    assert data["classes"] == 2
    assert data["mode"] == "even-wilf"
    assert [b["patterns"] for b in data["blocks"]] == [["12"], ["21"]]


def test_classify_wilf_mode(capsys):
    code, out, _ = run(
        capsys, "classify", "3", "--max-n", "6", "--mode", "wilf", "--format", "json"
    )
    data = json.loads(out)
    assert data["classes"] == 1


def test_map_forward_example(capsys):
    code, out, _ = run(capsys, "map", "321", "--t", "3", "--dir", "forward")
    assert code == 0
    data = json.loads(out)
    assert data["result"] == "213"
    assert data["applications"] == 1
    assert data["shape"] == "3,3,3"
    assert data["steps"][0]["selection"] == [1, 2, 3]


def test_map_backward_inverts(capsys):
    _, fwd, _ = run(capsys, "map", "4321", "--t", "3")
    image = json.loads(fwd)["result"]
    _, bwd, _ = run(capsys, "map", image, "--t", "3", "--dir", "backward")
    assert json.loads(bwd)["result"] == "4321"


def test_map_with_shape_and_errors(capsys):
    code, out, _ = run(capsys, "map", "321", "--shape", "3,3,3", "--t", "2")
    assert code == 0 and json.loads(out)["sign_flips"] >= 1
    code, _, err = run(capsys, "map", "312", "--shape", "3,2,1", "--t", "3")
    assert code == 1 and "transversal" in err
    assert run(capsys, "map", "321", "--t", "1")[0] == 1


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "sign-symmetry", "--max-n", "4")
    assert code == 0
    assert "status: verified" in out
    code, _, err = run(capsys, "verify", "no-such-check")
    assert code == 1
    code, _, err = run(capsys, "verify", "sign-symmetry", "--box", "4")
    assert code == 1 and "no --box" in err


def test_verify_json_report(capsys):
    code, out, _ = run(
        capsys, "verify", "theorem-jtft", "--t", "3", "--box", "4", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["name"] == "theorem-jtft"
    assert data["status"] == "verified"
    assert data["params"]["t"] == 3 and data["params"]["box"] == 4
    assert data["tool_version"] == __version__


def test_verify_refuted_maps_to_exit_2(capsys, monkeypatch):
    def fake_check(max_n: int = 5):
        return "refuted", {"max_n": max_n}, {"n": 3}, None

    monkeypatch.setitem(REGISTRY, "fake-check", fake_check)
    code, out, _ = run(capsys, "verify", "fake-check", "--format", "json")
    assert code == 2
    assert json.loads(out)["witness"] == {"n": 3}


def test_tables_small(capsys):
    code, out, _ = run(capsys, "tables", "--max-len", "2", "--max-n", "5")
    assert code == 0
    assert "class counts" in out
    code, out, _ = run(
        capsys, "tables", "--max-len", "2", "--max-n", "5", "--format", "csv"
    )
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "wilf", "wilf_ref", "even_wilf", "even_wilf_ref"]
    assert rows[1] == ["1", "1", "1", "1", "1"]
    assert rows[2] == ["2", "1", "1", "2", "2"]


def test_tables_json(capsys):
    code, out, _ = run(
        capsys, "tables", "--max-len", "3", "--max-n", "6", "--format", "json"
    )
    data = json.loads(out)
    assert [r["k"] for r in data["class_counts"]] == [1, 2, 3]
    assert data["classifications"][0]["k"] == 3
    assert data["classifications"][0]["classes"] == 2


def test_verify_cache_sweep(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("EVENWILF_CACHE_DIR", str(tmp_path))
    run(capsys, "count", "321", "--n", "5")  # seed the cache
    code, out, _ = run(capsys, "--verify-cache")
    assert code == 0
    assert "cache ok" in out
    # poison the cache file and sweep again
    from evenwilf.cache import CountCache

    record = {
        "key": "perm n=4 sigma=2,1,3",
        "total": 7,
        "even": 7,
        "odd": 0,
        "tool_version": __version__,
        "timestamp": "2000-01-01T00:00:00",
    }
    with open(CountCache().path, "a") as f:
        f.write(json.dumps(record) + "\n")
    code, _, err = run(capsys, "--verify-cache")
    assert code == 1
    assert "mismatch" in err


def test_no_cache_flag(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("EVENWILF_CACHE_DIR", str(tmp_path))
    run(capsys, "count", "321", "--n", "5", "--no-cache")
    assert not (tmp_path / "counts.jsonl").exists()
    run(capsys, "count", "321", "--n", "5")
    assert (tmp_path / "counts.jsonl").exists()


def test_jobs_env_default(monkeypatch):
    from evenwilf.cli import _default_jobs

    monkeypatch.setenv("EVENWILF_JOBS", "4")
    assert _default_jobs() == 4
    monkeypatch.setenv("EVENWILF_JOBS", "garbage")
    assert _default_jobs() == 1
    monkeypatch.delenv("EVENWILF_JOBS")
    assert _default_jobs() == 1
