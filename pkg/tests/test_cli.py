import json
import os
import subprocess
import sys

import pytest

from breuil.cli import main
from breuil.fixtures import mult1
from breuil.padic import PadicConfig
from breuil.ring import s_E, s_one, s_u
from breuil.sampling import random_extension, rng_from
from breuil.sdiv import SDivModule
from breuil.textio import document, dumps, loads

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(REPO, "fixtures")
CFG = PadicConfig.standard(2, 5)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, value, cfg=CFG):
    path = tmp_path / name
    path.write_text(dumps(document(value, cfg)))
    return str(path)


@pytest.mark.parametrize("name,types", [("mult1", "[0]"), ("et1", "[1]")])
def test_dual_swaps_types(capsys, name, types):
    code, out, _ = run(capsys, "dual", os.path.join(FIXTURES, name))
    assert code == 0
    assert f"types = {types}" in out
    assert loads(out).value.prec == 4


@pytest.mark.parametrize("name", ["mult1", "et1"])
def test_double_dual_is_byte_identical(capsys, tmp_path, name):
    _, once, _ = run(capsys, "dual", os.path.join(FIXTURES, name))
    path = tmp_path / "d"
    path.write_text(once)
    code, twice, _ = run(capsys, "dual", str(path))
    assert code == 0
    _, reduced, _ = run(capsys, "fixtures", name, "--reduce", "3")
    assert twice == reduced


def test_fixture_files_match_builtins(capsys):
    for name in ("mult1", "et1", "mult1-mod-p^1", "et1-mod-p^1"):
        _, out, _ = run(capsys, "fixtures", name)
        with open(os.path.join(FIXTURES, name), encoding="utf-8") as fh:
            assert fh.read() == out


def test_fixture_path_fallback(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "dual", "fixtures/mult1")
    assert code == 0 and "types = [0]" in out


def test_fixtures_list_and_unknown(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and "mult1-mod-p^n" in out
    code, _, err = run(capsys, "fixtures", "widget")
    assert code == 2 and "unknown fixture" in err


def test_fixtures_config_flags(capsys):
    code, out, _ = run(capsys, "fixtures", "mult1", "--prime", "3", "--eisenstein=-3,0,1",
                       "--precision", "4")
    assert code == 0
    assert out.startswith("breuil v1 p=3 e=2 E=[-3,0,1] N=4\n")
    code, _, _ = run(capsys, "fixtures", "mult1", "--prime", "3", "--eisenstein=-9,0,1")
    assert code == 2


def test_check_reports_axiom(capsys, tmp_path):
    good = write(tmp_path, "good", mult1(CFG))
    assert run(capsys, "check", good)[:2] == (0, "ok: sdiv\n")
    bad = write(tmp_path, "bad", SDivModule(CFG, (1,), ((s_u(CFG),),), 5))
    code, out, _ = run(capsys, "check", bad)
    assert code == 1 and "generates" in out
    code, out, _ = run(capsys, "--format", "json", "check", bad)
    assert code == 1 and json.loads(out)["ok"] is False


def test_check_torsion_certificate(capsys, tmp_path):
    _, text, _ = run(capsys, "fixtures", "mult1-mod-p")
    path = tmp_path / "t"
    path.write_text(text.replace("[witness]\nvalue = [[S{0:1@5}]]", "[witness]\nvalue = [[S{}@5]]"))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1 and "certificate" in out
    path.write_text(text)
    assert run(capsys, "check", str(path))[0] == 0


def test_parse_errors_exit_2(capsys, tmp_path):
    path = tmp_path / "x"
    path.write_text("breuil v1 p=2 e=1 E=[-2,1] N=5\nkind = sdiv\nprec = 5\ntypes = [1\n")
    code, _, err = run(capsys, "--format", "json", "check", str(path))
    assert code == 2
    payload = json.loads(err)
    assert payload["error"] == "ParseError" and payload["line"] == 4
    path.write_text("breuil v1 p=2 e=1 E=[-3,1] N=5\nkind = selem\nvalue = S{}@5\n")
    assert run(capsys, "check", str(path))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing"))[0] == 2


def test_phi1_command(capsys, tmp_path):
    v = write(tmp_path, "v", (s_E(CFG),))
    code, out, _ = run(capsys, "phi1", os.path.join(FIXTURES, "mult1"), v)
    assert code == 0 and loads(out).value == (s_one(CFG, 4),)
    one = write(tmp_path, "one", (s_one(CFG),))
    code, _, err = run(capsys, "phi1", os.path.join(FIXTURES, "mult1"), one)
    assert code == 1 and "NotInFil1" in err
    code, out, _ = run(capsys, "phi1", os.path.join(FIXTURES, "mult1-mod-p^1"), v)
    assert code == 0 and loads(out).kind == "vector"


def test_eval_command(capsys, tmp_path):
    one = write(tmp_path, "one", (s_one(CFG),))
    code, out, _ = run(capsys, "eval", os.path.join(FIXTURES, "mult1-mod-p^1"), one, one)
    doc = loads(out)
    assert code == 0 and doc.kind == "sinfelem"
    assert doc.value.denom_exp == 1
    code, out, _ = run(capsys, "eval", os.path.join(FIXTURES, "mult1"), one, one)
    assert code == 0 and loads(out).value == s_one(CFG)


def test_resolve_command(capsys, tmp_path):
    resM, resN, ext = random_extension(CFG, rng_from(40), 1, 0)
    m, n, x = (write(tmp_path, k, v) for k, v in (("m", resM), ("n", resN), ("x", ext)))
    code, out, _ = run(capsys, "resolve", m, n, x)
    assert code == 0
    doc = loads(out)
    assert doc.kind == "torsion" and doc.value.n == 2
    path = tmp_path / "X"
    path.write_text(out)
    assert run(capsys, "check", str(path))[0] == 0
    code, _, err = run(capsys, "resolve", m, n, m)
    assert code == 2 and "extension" in err


def test_suite_command_is_deterministic(capsys):
    a = run(capsys, "--format", "json", "suite", "ring", "--scale", "0.05", "--seed", "7")
    b = run(capsys, "--format", "json", "suite", "ring", "--scale", "0.05", "--seed", "7")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["passed"] is True
    code, _, _ = run(capsys, "suite", "widget")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "breuil", "dual", os.path.join(FIXTURES, "et1")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "types = [1]" in proc.stdout
