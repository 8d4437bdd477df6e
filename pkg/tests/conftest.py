import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from breuil.padic import PadicConfig
from breuil.ring import SElem

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CONFIGS = {
    "p2": PadicConfig(2, 1, (-2, 1), 5),
    "p3": PadicConfig(3, 1, (-3, 1), 5),
    "p3e2": PadicConfig(3, 2, (-3, 0, 1), 5),
}


@pytest.fixture(params=list(CONFIGS), ids=list(CONFIGS))
def cfg(request):
    return CONFIGS[request.param]


@pytest.fixture
def cfg2():
    return CONFIGS["p2"]


def selems(cfg, prec=None, max_len=10):
    prec = cfg.N if prec is None else prec
    mod = cfg.p**prec
    return st.lists(st.integers(0, mod - 1), max_size=max_len).map(
        lambda cs: SElem(cfg, cs, prec))


def config_and(draw_elems=1, prec=None, max_len=10):
    """Strategy for (cfg, elem, ...) across the three test configurations."""
    return st.sampled_from(list(CONFIGS.values())).flatmap(
        lambda c: st.tuples(st.just(c), *[selems(c, prec, max_len) for _ in range(draw_elems)]))


# acceptance criteria report, filled by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
