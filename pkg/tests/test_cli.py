import json
import subprocess
import sys

import numpy as np
import pytest

from pdgschur.cli import main
from pdgschur.cli import cache as cache_mod
from pdgschur.cli.cache import RepCache
from pdgschur.nilhecke import NHRep


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, tmp_path, *argv):
    code, out, err = run(capsys, *argv, "--cache-dir", str(tmp_path))
    return code, (json.loads(out) if out else None), err


def test_basis_of_maximal_G(capsys, tmp_path):
    code, data, _ = run_json(capsys, tmp_path, "basis", "--n", "2", "--l", "3", "--p", "3",
                             "--lambda", "1,1,0")
    assert code == 0 and data["schema"] == 1
    assert data["dim"] == 2 and data["d_stable"]
    words = sorted(term[0] for b in data["graded_basis"] for term in b["element"])
    assert words == ["y1^2 y2", "y1^2 y2 psi1"]


def test_basis_truncated_and_trivial(capsys, tmp_path):
    code, data, _ = run_json(capsys, tmp_path, "basis", "--n", "2", "--l", "3", "--p", "3",
                             "--lambda", "0,1,1", "--truncated")
    assert code == 0 and data["dim"] == 6
    code, data, _ = run_json(capsys, tmp_path, "basis", "--n", "0", "--l", "3", "--p", "3",
                             "--lambda", "0,0,0")
    assert code == 0 and data["dim"] == 1 and data["graded_basis"][0]["degree"] == 0


def test_usage_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "basis", "--n", "2", "--l", "3", "--p", "4", "--lambda", "1,1,0")[0] == 2
    assert run(capsys, "basis", "--n", "2", "--l", "3", "--p", "3", "--lambda", "1,0,0")[0] == 2
    assert run(capsys, "verify", "--only", "no-such-check", "--no-cache")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["basis"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_schur_blocks(capsys, tmp_path):
    code, data, _ = run_json(capsys, tmp_path, "schur", "--n", "2", "--r", "2", "--s", "1", "--p", "3")
    assert code == 0 and data["total_dim"] == 11
    assert sorted(sum(c for _, c in b["graded_dims"]) for b in data["blocks"]) == [1, 2, 2, 6]


def test_functor_decomposition(capsys, tmp_path):
    code, data, _ = run_json(capsys, tmp_path, "functor", "--op", "E", "--lambda", "1,1,0,1", "--p", "3")
    assert code == 0
    assert data["decomposition"] == [{"shape": "(0^2 1^0 0^0 1^1)", "multiplicity": [[-1, 1], [1, 1]]}]
    code, _, _ = run_json(capsys, tmp_path, "functor", "--op", "E", "--lambda", "2,0,1,0", "--p", "3")
    assert code == 2


def test_canonical_text_mode(capsys, tmp_path):
    code, out, _ = run(capsys, "canonical", "--r", "1", "--s", "1", "--format", "text", "--no-cache")
    assert code == 0 and "q" in out


def test_compare(capsys, tmp_path):
    code, data, _ = run_json(capsys, tmp_path, "compare", "--r", "2", "--s", "1", "--p", "3")
    assert code == 0 and data["ok"] and len(data["weights"]) == 4


def test_verify_only_dp_zero(capsys, tmp_path):
    code, data, err = run_json(capsys, tmp_path, "verify", "--only", "dp-zero", "--no-timing")
    assert code == 0 and [c["name"] for c in data["checks"]] == ["dp-zero"]
    assert "PASS dp-zero" in err


def test_output_is_deterministic(capsys, tmp_path):
    argv = ["verify", "--only", "1", "3", "--no-timing", "--cache-dir", str(tmp_path)]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "pdgschur", "algebra", "--n", "1", "--l", "3",
                           "--p", "3", "--cache-dir", str(tmp_path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["dim"] == 3 and data["dp_zero"] and data["trace_nondegenerate"]


# -------------------------------------------------------------- cache


def test_cache_roundtrip(tmp_path):
    cache = RepCache(tmp_path)
    rep = NHRep(2, 3, 3)
    cache.save(rep)
    back = cache.load(2, 3, 3)
    assert back is not None
    for a, b in zip(rep.Y + rep.Psi, back.Y + back.Psi):
        assert np.array_equal(a, b)
    assert np.array_equal(rep.D, back.D)
    assert cache.entries()[0]["dim"] == 12


def test_cache_missing_and_corrupt(tmp_path, caplog):
    cache = RepCache(tmp_path)
    assert cache.load(2, 3, 3) is None
    rep = cache.get(2, 3, 3)
    blob = cache.blob_path(2, 3, 3)
    blob.write_bytes(blob.read_bytes()[:-7] + b"garbage")
    assert cache.load(2, 3, 3) is None
    assert "checksum" in caplog.text
    again = cache.get(2, 3, 3)
    assert np.array_equal(again.mats, rep.mats)
    assert cache.load(2, 3, 3) is not None


def test_cache_version_bump(tmp_path, monkeypatch):
    cache = RepCache(tmp_path)
    cache.save(NHRep(1, 2, 3))
    monkeypatch.setattr(cache_mod, "FORMAT_VERSION", cache_mod.FORMAT_VERSION + 1)
    assert cache.load(1, 2, 3) is None


def test_cache_manifest_version_mismatch(tmp_path):
    cache = RepCache(tmp_path)
    cache.save(NHRep(1, 2, 3))
    mpath = cache.manifest_path(1, 2, 3)
    data = json.loads(mpath.read_text())
    data["version"] = 0
    mpath.write_text(json.dumps(data))
    assert cache.load(1, 2, 3) is None


def test_cache_clear(capsys, tmp_path):
    cache = RepCache(tmp_path)
    cache.save(NHRep(1, 2, 3))
    code, data, _ = run_json(capsys, tmp_path, "cache", "clear")
    assert code == 0 and data["removed"] == 2
    assert cache.entries() == []


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(cache_mod.ENV_VAR, str(tmp_path / "here"))
    assert RepCache().root == tmp_path / "here"
