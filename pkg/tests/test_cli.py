import json
import subprocess
import sys

import pytest

from conevex.cli import main
from conevex.fixtures import FIXTURES, fixture_text


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in FIXTURES:
        p = tmp_path / f"{name}.json"
        p.write_text(fixture_text(name))
        out[name] = str(p)
    return out


def test_efficient(files, capsys):
    assert main(["efficient", files["INST-A"]]) == 0
    assert capsys.readouterr().out.splitlines() == ["(a, (0, 1))", "(b, (1, 0))"]


def test_json_report(files, tmp_path):
    out = tmp_path / "r.json"
    assert main(["efficient", files["INST-A"], "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["weakly_efficient"] == [{"label": "a", "ybar": ["0", "1"]}, {"label": "b", "ybar": ["1", "0"]}]


@pytest.mark.parametrize("argv, code", [
    (["feasible", "{A}"], 0),
    (["classify", "{C}", "--grid", "4"], 0),
    (["alt", "{A}"], 0),
    (["alt", "{B}", "--check-hypotheses"], 0),
    (["scalarize", "{A}", "--label", "a"], 0),
    (["saddle", "{A}", "--label", "a"], 0),
    (["saddle", "{A}", "--label", "c"], 1),
    (["scalar-saddle", "{A}", "--label", "a", "--xi", "1,0"], 0),
    (["scalar-saddle", "{A}", "--label", "b", "--xi", "1,0"], 1),
    (["scalar-saddle", "{A}", "--label", "a", "--xi", "0,0"], 1),
    (["construct", "{A}", "--label", "a"], 0),
    (["construct", "{A}", "--label", "c"], 1),
    (["oracle", "{A}"], 0),
    (["alt", "missing.json"], 2),
    (["efficient", "{A}", "--label", "a"], 2),
    (["saddle", "{A}", "--label", "zz"], 2),
    (["scalar-saddle", "{A}", "--label", "a", "--xi", "x,y"], 2),
    (["verify", "--family", "H1", "--count", "0", "--seed", "1"], 2),
    ([], 2),
])
def test_exit_codes(files, argv, code):
    subst = {"{A}": files["INST-A"], "{B}": files["INST-B"], "{C}": files["INST-C"]}
    assert main([subst.get(a, a) for a in argv]) == code


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(fixture_text("INST-A").replace('"-1"', '"1/0"'))
    assert main(["feasible", str(bad)]) == 2


def test_gen_and_seed_env(tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.delenv("CONEVEX_SEED", raising=False)
    assert main(["gen", "--family", "H2", "-o", str(a)]) == 2
    monkeypatch.setenv("CONEVEX_SEED", "42")
    assert main(["gen", "--family", "H2", "-o", str(a)]) == 0
    assert main(["gen", "--family", "H2", "--seed", "42", "-o", str(b)]) == 0
    assert a.read_text() == b.read_text()
    # the flag wins over the environment
    assert main(["gen", "--family", "H2", "--seed", "43", "-o", str(b)]) == 0
    assert a.read_text() != b.read_text()
    assert main(["alt", str(a)]) == 0


def test_verify_small(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--family", "H3", "--count", "5", "--seed", "7", "--json", str(out)]) == 0
    assert json.loads(out.read_text())["counts"]["fail"] == 0


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "conevex", "feasible", files["INST-A"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "feasible: a, b"
