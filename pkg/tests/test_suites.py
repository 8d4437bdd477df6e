import pytest

from breuil import suites
from breuil.suites import SuiteResult, default_configs, run_suite, suite_names


@pytest.mark.parametrize("name", [n for n in suite_names() if n != "all"])
def test_small_scale_passes(name):
    (res,) = run_suite(name, seed=3, scale=0.1)
    assert res.name == name and res.cases > 0
    assert res.passed, res.failures[:5]


def test_deterministic_under_seed():
    a = [r.as_dict() for r in run_suite("torsion-eval", seed=11, scale=0.1)]
    b = [r.as_dict() for r in run_suite("torsion-eval", seed=11, scale=0.1)]
    assert a == b


def test_all_runs_every_suite():
    out = run_suite("all", seed=1, configs=default_configs()[:1], scale=0.02)
    assert [r.name for r in out] == [n for n in suite_names() if n != "all"]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("widget")


def test_result_bookkeeping():
    r = SuiteResult("x")
    r.check(True, "fine")
    r.check(False, "broken")
    assert r.cases == 2 and not r.passed and r.as_dict()["failures"] == ["broken"]


def test_suite_detects_broken_frobenius(monkeypatch):
    # a wrong Frobenius (u -> u) is additive and multiplicative, but the phi_1 suite
    # must notice that phi(Fil^1) is no longer inside pS
    monkeypatch.setattr(suites, "s_frobenius", lambda a: a)
    (res,) = run_suite("phi1", seed=0, scale=0.05)
    assert not res.passed
