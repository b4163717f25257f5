import io
import json
import os

import pytest

from qschubert.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse-level usage errors
        code = exc.code
    out = capsys.readouterr().out
    return code, out


def test_roots_text(capsys):
    code, out = run(capsys, "roots", "--type", "A2", "--word", "1,2,1")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("X_")]
    assert len(lines) == 3


def test_basis_json_deterministic(capsys):
    args = ("basis", "--type", "B2", "--word", "2,1,2,1",
            "--degree-bound", "3", "--format", "json")
    code1, out1 = run(capsys, *args)
    code2, out2 = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["basis"]
    for rec in payload["basis"]:
        assert set(rec) >= {"degree", "a", "coords", "string", "norm"}


def test_strings_output(capsys):
    code, out = run(capsys, "strings", "--type", "A2", "--word", "1,2,1",
                    "--degree-bound", "2")
    assert code == 0
    assert "string" in out


def test_relations(capsys):
    code, out = run(capsys, "relations", "--type", "A2", "--word", "1,2,1",
                    "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["relations"]) == 3


def test_compare_equal(capsys):
    code, out = run(capsys, "compare", "--type", "A2", "--word", "1,2,1",
                    "--word2", "2,1,2", "--degree-bound", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_verify_fast(capsys):
    code, out = run(capsys, "verify", "--type", "A2", "--word", "1,2,1",
                    "--degree-bound", "3")
    assert code == 0


def test_embed(capsys):
    code, out = run(capsys, "embed", "--type", "A2", "--word", "1",
                    "--word2", "2,1", "--degree-bound", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_bischubert(capsys):
    code, out = run(capsys, "bischubert", "--type", "A2", "--word", "1,2,1",
                    "--word2", "1,2,1", "--degree-bound", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["elements"]


def test_expand_roundtrip(capsys, monkeypatch):
    element = {"terms": [{"word": [1, 2], "coeff": {"num": [[0, 1]], "den": [[0, 1]]}}]}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(element)))
    code, out = run(capsys, "expand", "--type", "A2", "--word", "1,2,1",
                    "--format", "json")
    assert code == 0
    assert json.loads(out)["coords"]


def test_expand_not_in_cell(capsys, monkeypatch):
    element = {"terms": [{"word": [2], "coeff": {"num": [[0, 1]], "den": [[0, 1]]}}]}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(element)))
    code, out = run(capsys, "expand", "--type", "A2", "--word", "1")
    assert code == 1


def test_usage_errors(capsys):
    code, _ = run(capsys, "roots", "--type", "A2", "--word", "1,1")
    assert code == 2
    code, _ = run(capsys, "roots", "--type", "Z9", "--word", "1")
    assert code == 2
    code, _ = run(capsys, "compare", "--type", "A2", "--word", "1,2,1")
    assert code == 2


def test_gcm_file(capsys, tmp_path):
    gcm = tmp_path / "datum.json"
    gcm.write_text(json.dumps({"cartan_matrix": [[2, -1], [-1, 2]],
                               "symmetrizers": [1, 1]}))
    code, out = run(capsys, "roots", "--gcm", str(gcm), "--word", "1,2,1")
    assert code == 0


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QSCHUBERT_CACHE_DIR", str(tmp_path))
    code, out1 = run(capsys, "verify", "--type", "A2", "--word", "1,2,1",
                     "--degree-bound", "2")
    assert code == 0
    assert any(tmp_path.iterdir())
    # second run loads the persisted memo and agrees byte for byte
    code, out2 = run(capsys, "verify", "--type", "A2", "--word", "1,2,1",
                     "--degree-bound", "2")
    assert code == 0
    assert out1 == out2
