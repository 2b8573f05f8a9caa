import json
import subprocess
import sys

import pytest

from qrec import io
from qrec.cli import main
from qrec.monoid import Dfa

from .conftest import ab_star_dfa, even_a_dfa, marked_a_dfa


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, d in [("even", even_a_dfa()), ("abstar", ab_star_dfa()), ("marka", marked_a_dfa())]:
        p = tmp_path / f"{name}.json"
        p.write_text(io.dumps(io.dfa_to_json(d)))
        out[name] = p
    p = tmp_path / "all.json"
    p.write_text(io.dumps(io.dfa_to_json(Dfa(1, ("a", "b"), [[0, 0]], 0, [0]))))
    out["all"] = p
    return out


@pytest.mark.parametrize("name, size", [("all", 1), ("even", 2), ("abstar", 6)])
def test_synmon_sizes(files, capsys, name, size):
    assert main(["synmon", str(files[name])]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["size"] == size
    assert len(out["monoid"]["mul"]) == size


def test_synmon_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["synmon", str(p)]) == 2
    assert "error" in capsys.readouterr().err


def quantified(files, tmp_path, spec, k):
    out = tmp_path / f"q-{spec}-{k}.json"
    assert main(["quantify", "-r", str(files["marka"]), "-s", spec, "--k", str(k), "-o", str(out)]) == 0
    return out


@pytest.mark.parametrize(
    "spec, k, word, verdict",
    [
        ("bool2", 1, "aba", 0),
        ("bool2", 1, "bbb", 1),
        ("zq:2", 0, "abab", 0),
        ("zq:2", 0, "ab", 1),
        ("zq:3", 2, "aabb", 0),
        ("zq:3", 2, "aaa", 1),
        ("zq:3", 0, "", 0),
    ],
)
def test_quantify_then_member(files, tmp_path, capsys, spec, k, word, verdict):
    q = quantified(files, tmp_path, spec, k)
    obj = json.loads(q.read_text())
    assert obj["accepting"]["kind"] == "qk" and obj["accepting"]["k"] == k
    assert main(["member", "-r", str(q), "-w", word]) == verdict
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("accept" if verdict == 0 else "reject")
    assert "image" in json.loads("\n".join(lines[1:]))


def test_member_unknown_letter(files, tmp_path, capsys):
    q = quantified(files, tmp_path, "bool2", 1)
    assert main(["member", "-r", str(q), "-w", "abc"]) == 2


def test_quantify_needs_marked_alphabet(files, capsys):
    assert main(["quantify", "-r", str(files["even"]), "-s", "bool2", "--k", "1"]) == 2


def test_quantify_unknown_semiring(files, capsys):
    assert main(["quantify", "-r", str(files["marka"]), "-s", "nat", "--k", "1"]) == 2


def test_matrix_route(files, tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["quantify", "-r", str(files["marka"]), "-s", "zq:3", "--k", "2", "--via", "matrix", "-o", str(out)]) == 0
    assert main(["member", "-r", str(out), "-w", "abab"]) == 0
    assert main(["member", "-r", str(out), "-w", "abb"]) == 1


def test_synmon_output_feeds_quantify(files, tmp_path, capsys):
    rec = tmp_path / "rec.json"
    assert main(["synmon", str(files["marka"]), "-o", str(rec)]) == 0
    q = tmp_path / "q.json"
    assert main(["quantify", "-r", str(rec), "-s", "bool2", "--k", "1", "-o", str(q)]) == 0
    assert main(["member", "-r", str(q), "-w", "ba"]) == 0


def test_verify_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--suite", "reutenauer", "-o", str(a)]) == 0
    assert main(["verify", "--suite", "reutenauer", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["seed"] == 0 and doc["failed"] == 0


def test_verify_measures_report(capsys):
    assert main(["verify", "--suite", "measures"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["reports"][0]["suite"] == "measures"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        main(["verify", "--suite", "nope"])
    assert e.value.code == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "qrec.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "synmon" in r.stdout
