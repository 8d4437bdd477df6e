import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from breuil import kernels
from breuil.ring import tables

from conftest import CONFIGS

needs_numba = pytest.mark.skipif(kernels.mul_numba is None, reason="numba unavailable")


def _args(cfg, m):
    t = tables(cfg)
    t.ensure_q(200)
    return t.fv, t.fu, t.fui, t.powers(m), m, cfg.p**m


def vectors(cfg):
    return arrays(np.int64, st.integers(1, 24), elements=st.integers(0, cfg.modulus - 1))


@needs_numba
@pytest.mark.parametrize("name", list(CONFIGS))
@given(data=st.data())
def test_mul_backends_agree(name, data):
    cfg = CONFIGS[name]
    a, b = data.draw(vectors(cfg)), data.draw(vectors(cfg))
    m = data.draw(st.integers(1, cfg.N))
    fv, fu, fui, pp, m, mod = _args(cfg, m)
    a, b = a % mod, b % mod
    x = kernels.mul_numpy(a, b, cfg.e, fv, fu, fui, pp, m, mod)
    y = kernels.mul_numba(a, b, cfg.e, fv, fu, fui, pp, m, mod)
    assert np.array_equal(x, y)


@needs_numba
@pytest.mark.parametrize("name", list(CONFIGS))
@given(data=st.data())
def test_frobenius_backends_agree(name, data):
    cfg = CONFIGS[name]
    a = data.draw(vectors(cfg))
    fv, fu, fui, pp, m, mod = _args(cfg, cfg.N)
    x = kernels.frobenius_numpy(a, cfg.p, cfg.e, fv, fu, fui, pp, m, mod)
    y = kernels.frobenius_numba(a, cfg.p, cfg.e, fv, fu, fui, pp, m, mod)
    assert np.array_equal(x, y)


@needs_numba
@pytest.mark.parametrize("name", list(CONFIGS))
@given(data=st.data())
def test_project_backends_agree(name, data):
    cfg = CONFIGS[name]
    a = data.draw(vectors(cfg))
    rows = tables(cfg).projection_rows(a.shape[0])
    mod = cfg.modulus
    assert np.array_equal(kernels.project_numpy(a, rows, mod), kernels.project_numba(a, rows, mod))


def test_backend_flag_falls_back(monkeypatch):
    import importlib

    from breuil import _accel

    monkeypatch.setenv("BREUIL_DISABLE_NUMBA", "1")
    try:
        acc = importlib.reload(_accel)
        assert not acc.NUMBA_OK
        k = importlib.reload(kernels)
        assert k.BACKEND == "numpy" and k.mul is k.mul_numpy
    finally:
        monkeypatch.delenv("BREUIL_DISABLE_NUMBA")
        importlib.reload(_accel)
        importlib.reload(kernels)
