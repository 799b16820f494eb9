from __future__ import annotations

import csv
import io
import json
import os

import pytest

from freqlangid.cli import main
from freqlangid.data import CORPUS_DIR, MINI_DIR
from freqlangid.profile import load_profiles
from conftest import GOLDEN

RO_TEXT = (MINI_DIR / "ro" / "scufita_rosie.txt").read_text(encoding="utf-8")
GOLDEN_CASES = {
    "detect": ["detect", "--text", RO_TEXT, "--output", "json"],
    "detect_method1": ["detect", "--text", RO_TEXT, "--method", "1", "--m", "5", "--output", "json"],
    "top_k": ["top-k", "--text", RO_TEXT, "-k", "5", "--output", "json"],
    "eval": ["eval", "--output", "json"],
    "sweep_m": ["sweep-m", "--from", "2", "--to", "6", "--output", "json"],
    "noise": ["noise", "--op", "symbol-substitution", "--trials", "100", "--seed", "7", "--language", "de",
              "--output", "json"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def _no_profile_env(monkeypatch):
    monkeypatch.delenv("FREQLANGID_PROFILES", raising=False)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_golden(capsys, name):
    code, out, _ = run(capsys, *GOLDEN_CASES[name])
    assert code == 0
    expected = (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
    assert json.loads(out) == json.loads(expected)


def test_detect_romanian(capsys):
    assert len(RO_TEXT) >= 150
    code, out, _ = run(capsys, "detect", "--text", RO_TEXT)
    assert code == 0
    assert out.startswith("winner: ro")
    for lang in ("de", "en", "hu", "nl", "ro", "tr"):
        assert f"\n{lang} " in out


def test_detect_json_has_all_breakdown_fields(capsys):
    _, out, _ = run(capsys, "detect", "--text", RO_TEXT, "--output", "json")
    doc = json.loads(out)
    assert doc["winner"] == "ro"
    assert {"margin", "low_confidence", "tie"} <= set(doc)
    for s in doc["scores"]:
        assert set(s) == {"language_id", "X", "F", "monogram_total", "bigram_total", "p", "k", "bonus", "total"}
        assert s["total"] == s["monogram_total"] + s["bigram_total"] + s["bonus"]


def test_detect_file(capsys, tmp_path):
    f = tmp_path / "t.txt"
    f.write_bytes("Der Fuchs läuft schnell über die große Wiese.".encode())
    code, out, _ = run(capsys, "detect", "--file", str(f), "--output", "csv")
    assert code == 0
    assert out.splitlines()[1].startswith("de,")


def test_detect_empty_exits_2(capsys):
    code, _, err = run(capsys, "detect", "--text", "")
    assert code == 2
    assert "undeterminable" in err


def test_invalid_utf8_exits_1(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_bytes(b"abc\xff")
    code, _, err = run(capsys, "detect", "--file", str(f))
    assert code == 1 and "offset 3" in err


def test_missing_profiles_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "detect", "--text", "abc", "--profiles", str(tmp_path / "nope.json"))
    assert code == 1 and "not found" in err


def test_profiles_from_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FREQLANGID_PROFILES", str(tmp_path / "nope.json"))
    assert run(capsys, "detect", "--text", "abc")[0] == 1


def test_invalid_profiles_exits_1(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text('{"version": 1, "profiles": [{"language_id": "x"}]}', encoding="utf-8")
    assert run(capsys, "detect", "--text", "abc", "--profiles", str(f))[0] == 1


def test_build_profile(capsys, tmp_path):
    out = tmp_path / "p.json"
    code, stdout, _ = run(
        capsys, "build-profile", "--corpus-dir", str(CORPUS_DIR / "ro"), "--language", "ro", "--profiles", str(out)
    )
    assert code == 0
    first = out.read_bytes()
    ro = load_profiles(out)["ro"]
    assert "ă" in ro.ranked_chars[:12]
    run(capsys, "build-profile", "--corpus-dir", str(CORPUS_DIR / "ro"), "--language", "ro", "--profiles", str(out))
    assert out.read_bytes() == first


def test_build_profile_merges(capsys, tmp_path):
    out = tmp_path / "p.json"
    for lang in ("de", "en"):
        run(capsys, "build-profile", "--corpus-dir", str(CORPUS_DIR / lang), "--language", lang, "--profiles", str(out))
    assert sorted(load_profiles(out)) == ["de", "en"]


def test_build_profile_diacritics_file(capsys, tmp_path):
    dia = tmp_path / "dia.txt"
    dia.write_text("ä ö\nü\n", encoding="utf-8")
    out = tmp_path / "p.json"
    run(capsys, "build-profile", "--corpus-dir", str(CORPUS_DIR / "de"), "--language", "de",
        "--diacritics-file", str(dia), "--profiles", str(out))
    assert load_profiles(out)["de"].diacritics == frozenset("äöü")


def test_build_profile_empty_dir_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "build-profile", "--corpus-dir", str(tmp_path), "--language", "xx",
                       "--profiles", str(tmp_path / "p.json"))
    assert code == 1
    assert not (tmp_path / "p.json").exists()


def test_build_profile_needs_destination(capsys):
    assert run(capsys, "build-profile", "--corpus-dir", str(CORPUS_DIR / "ro"), "--language", "ro")[0] == 1


def test_eval_writes_reports(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", "--methods", "1,2", "--out-dir", str(tmp_path))
    assert code == 0
    assert "Dataset, Method 1, Method 2" in out
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["comparison.csv", "comparison.png", "confusion_method1.csv", "confusion_method2.csv", "report.csv"]
    rows = list(csv.DictReader(io.StringIO((tmp_path / "comparison.csv").read_text())))
    assert rows
    for row in rows:
        assert float(row["method2_accuracy"]) >= float(row["method1_accuracy"])


def test_eval_no_plot(capsys, tmp_path):
    run(capsys, "eval", "--out-dir", str(tmp_path), "--no-plot")
    assert not (tmp_path / "comparison.png").exists()


def test_eval_custom_manifest(capsys, tmp_path):
    (tmp_path / "a.txt").write_text("Ana are mere și pere, iar bunica face plăcinte.", encoding="utf-8")
    (tmp_path / "m.tsv").write_text("a.txt\tro\tfile\tLDDS\nmissing.txt\tro\n", encoding="utf-8")
    code, out, err = run(capsys, "eval", "--manifest", str(tmp_path / "m.tsv"), "--output", "csv")
    assert code == 0
    assert "LDDS,1,all,1," in out
    assert "missing.txt" in err


def test_sweep_m(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep-m", "--from", "2", "--to", "20", "--out-dir", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "m_sweep.csv").read_text().splitlines()
    assert lines[0] == "m,accuracy" and len(lines) == 20
    assert (tmp_path / "m_sweep.png").stat().st_size > 0


def test_noise_requires_seed(capsys):
    with pytest.raises(SystemExit) as info:
        main(["noise", "--op", "vowel-deletion"])
    assert info.value.code == 2
    assert "--seed" in capsys.readouterr().err


def test_noise_vowel_deletion_default_text(capsys):
    code, out, _ = run(capsys, "noise", "--op", "vowel-deletion", "--rate", "0.3", "--trials", "1000",
                       "--seed", "42", "--output", "csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["mean_delta"]) < 0


def test_noise_reproducible_and_curve(capsys, tmp_path):
    argv = ["noise", "--op", "vowel-substitution", "--rate", "0.1,0.3", "--trials", "100", "--seed", "3",
            "--output", "csv"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--out-dir", str(tmp_path))
    assert first == second
    assert first.splitlines()[0] == "op,rate,trials,mean_delta,std,fraction_negative,flip_rate"
    assert len(first.splitlines()) == 3
    assert (tmp_path / "noise.csv").read_text() == first
    assert (tmp_path / "noise.png").exists()


def test_noise_short_text_exits_1(capsys):
    assert run(capsys, "noise", "--op", "vowel-deletion", "--seed", "1", "--text", "too short")[0] == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "freqlangid", "detect", "--text", ""], capture_output=True, env=dict(os.environ)
    )
    assert proc.returncode == 2
