import json
import subprocess
import sys

import pytest

from gknormal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "order, expected", [("8", "K8, D4"), ("10", "D5 (R10)"), ("7", "(none)")]
)
def test_classify(capsys, order, expected):
    code, out, _ = run(capsys, "classify", "--order", order)
    assert code == 0 and out.strip() == expected


def test_classify_unsupported(capsys):
    code, _, err = run(capsys, "classify", "--order", "13")
    assert code == 2 and "error" in err


def test_bad_usage_exit_code(capsys):
    assert run(capsys, "enumerate", "--k", "x")[0] == 2
    assert run(capsys, "enumerate", "--k", "0")[0] == 2
    assert run(capsys, "enumerate", "--index", "9")[0] == 2


@pytest.mark.parametrize(
    "argv, total",
    [
        (["--k", "2", "--index", "8", "--source", "paper"], 7),
        (["--k", "2", "--index", "8", "--source", "oracle"], 13),
        (["--k", "1", "--index", "10", "--source", "oracle"], 1),
    ],
)
def test_enumerate(capsys, argv, total):
    code, out, _ = run(capsys, "enumerate", "--format", "json", *argv)
    data = json.loads(out)
    assert code == 0
    assert sum(len(v) for v in data["families"].values()) == total
    assert set(data) == {"k", "index", "source", "families", "labeled_counts", "formulas"}


def test_enumerate_paper_families_split(capsys):
    _, out, _ = run(capsys, "enumerate", "--k", "2", "--index", "8", "--format", "json")
    fam = json.loads(out)["families"]
    assert len(fam["R"]) == 1 and len(fam["D4"]) == 6


@pytest.mark.parametrize(
    "k, index, formula, oracle",
    [("1", "8", 8, 1), ("2", "8", 222, 13), ("3", "10", 50, 61)],
)
def test_count(capsys, k, index, formula, oracle):
    code, out, _ = run(capsys, "count", "--k", k, "--index", index, "--format", "json")
    r = json.loads(out)
    assert code == 0
    assert r["formula_value"] == formula and r["oracle_count"] == oracle
    if index == "10":
        assert r["labeled_count"] == formula


def test_count_text(capsys):
    code, out, _ = run(capsys, "count", "--k", "1", "--index", "8")
    assert code == 0 and "printed formula" in out and "oracle kernels" in out


def test_verify_ok(capsys):
    assert run(capsys, "verify", "--k", "2", "--index", "8")[0] == 0
    assert run(capsys, "verify", "--k", "1", "--index", "10", "--max-word-len", "10")[0] == 0


def test_verify_corrupted_catalog(capsys, tmp_path):
    path = tmp_path / "cat.json"
    assert run(capsys, "enumerate", "--k", "2", "--index", "8", "--format", "json", "--out", str(path))[0] == 0
    data = json.loads(path.read_text())
    assert run(capsys, "verify", "--catalog", str(path), "--max-word-len", "6")[0] == 0
    data["families"]["D4"][0]["images"][1] = "e"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--catalog", str(path), "--max-word-len", "6", "--format", "json")
    report = json.loads(out)
    assert code == 1
    assert report["failures"] and report["reports"][0]["checks"]["index"] is False


def test_verify_unreadable_catalog(capsys, tmp_path):
    bad = tmp_path / "x.json"
    bad.write_text("{}")
    assert run(capsys, "verify", "--catalog", str(bad))[0] == 2


@pytest.mark.parametrize("word, member", [("1 1", True), ("1 2", False), ("", True)])
def test_member(capsys, tmp_path, word, member):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"quotient": "D4", "index": 8, "images": ["b", "ab"]}))
    code, out, _ = run(capsys, "member", "--descriptor", str(path), "--word", word)
    assert code == 0
    assert out.startswith("member" if member else "non-member")


def test_member_rejects_bad_word(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"quotient": "D4", "index": 8, "images": ["b", "ab"]}))
    assert run(capsys, "member", "--descriptor", str(path), "--word", "1 3")[0] == 2


def test_json_output_deterministic(capsys):
    outs = []
    for workers in ("1", "2"):
        _, out, _ = run(capsys, "count", "--k", "2", "--index", "10", "--format", "json", "--workers", workers)
        outs.append(out)
    assert outs[0] == outs[1]
    a = run(capsys, "verify", "--k", "1", "--index", "8", "--format", "json", "--seed", "5")[1]
    b = run(capsys, "verify", "--k", "1", "--index", "8", "--format", "json", "--seed", "5")[1]
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gknormal", "classify", "--order", "8"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "K8, D4"
