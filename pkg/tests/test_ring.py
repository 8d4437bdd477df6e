import pytest
from hypothesis import given
from hypothesis import strategies as st

from breuil.errors import ConfigMismatch, NotAUnit, NotDivisible, NotInFil1, PrecisionExhausted
from breuil.padic import PadicConfig
from breuil.ring import (
    SElem,
    fil1_contains,
    fil1_lift,
    inverse_iteration_cap,
    ok_section,
    s_add,
    s_basis,
    s_breuil_c,
    s_E,
    s_frobenius,
    s_from_poly,
    s_gamma,
    s_inverse,
    s_mul,
    s_one,
    s_phi1,
    s_project_OK,
    s_u,
    s_zero,
)

import oracles
from conftest import CONFIGS, config_and

P2 = CONFIGS["p2"]
P3 = CONFIGS["p3"]
P3E2 = CONFIGS["p3e2"]


def S(cfg, d, prec=None):
    return SElem(cfg, d, prec)


# -- examples -----------------------------------------------------------


def test_add_examples(cfg):
    a = S(cfg, {0: 3, 2: 7})
    assert a + s_zero(cfg) == a
    assert (a + (-a)).is_zero()
    assert s_basis(cfg, 1) + s_basis(cfg, 1) == S(cfg, {1: 2})


def test_mul_examples():
    assert s_basis(P3E2, 2) * s_basis(P3E2, 2) == S(P3E2, {4: 2})
    cfg = PadicConfig.standard(2, 3)
    E = s_E(cfg)
    assert E * E == S(cfg, {0: 4, 1: 4, 2: 2})
    a = S(P3, {1: 5, 4: 2})
    assert s_one(P3) * a == a


def test_frobenius_examples():
    assert s_frobenius(s_one(P2)) == s_one(P2)
    assert s_frobenius(s_basis(P2, 1)) == S(P2, {2: 2})
    cfg = PadicConfig.standard(3, 2)
    assert s_frobenius(s_basis(cfg, 1)) == S(cfg, {3: 6})


def test_projection_examples(cfg):
    assert s_project_OK(s_E(cfg)).is_zero()
    assert s_project_OK(s_one(cfg)).coeffs == (1,) + (0,) * (cfg.e - 1)
    assert s_project_OK(s_basis(P2, 2)).coeffs == (2,)


def test_fil1_examples(cfg):
    assert fil1_contains(s_E(cfg))
    assert not fil1_contains(s_one(cfg))
    assert not fil1_contains(s_u(P2))
    for i in range(1, 8):
        assert fil1_contains(s_gamma(cfg, i))
    assert s_gamma(cfg, 1) == s_E(cfg)


def test_c_examples():
    cfg = PadicConfig.standard(2, 3)
    assert s_breuil_c(cfg) == S(cfg, {0: 3, 2: 1}, 2)
    assert s_breuil_c(P3) == S(P3, {0: -1, 3: 2}, 4)
    for cfg in CONFIGS.values():
        c = s_breuil_c(cfg)
        assert c.coeff(0) % cfg.p == cfg.p - 1
        assert s_phi1(s_E(cfg)) == c
        assert c * s_inverse(c) == s_one(cfg, c.prec)


def test_phi1_of_gamma_p(cfg):
    # phi(E^p/p!)/p = p^(p-1) c^p / p!, so p! phi_1(gamma_p) = p^(p-1) c^p
    p = cfg.p
    lhs = s_phi1(s_gamma(cfg, p)).scale(oracles.factorial_unit(p, p, cfg.N) * p)
    c = s_breuil_c(cfg)
    assert lhs == (c**p).scale(p ** (p - 1))


def test_phi1_of_multiple_of_E(cfg):
    s = S(cfg, {0: 2, 1: 1, 3: 4})
    assert s_phi1(s * s_E(cfg)) == s_frobenius(s).reduce(cfg.N - 1) * s_breuil_c(cfg)


def test_phi1_errors(cfg):
    with pytest.raises(NotInFil1):
        s_phi1(s_one(cfg))
    with pytest.raises(PrecisionExhausted):
        s_phi1(s_E(cfg, 1))


def test_u_power_vanishes():
    # u^30 = 15! 2^15 basis(30) is 0 mod 2^5
    u = s_u(P2)
    assert (u**30).is_zero()
    assert not (u**3).is_zero()


def test_inverse_examples(cfg):
    assert s_inverse(s_one(cfg)) == s_one(cfg)
    x = s_one(cfg) + s_u(cfg)
    assert x * s_inverse(x) == s_one(cfg)
    with pytest.raises(NotAUnit):
        s_inverse(s_u(cfg))
    small = PadicConfig.standard(2, 2)
    y = s_one(small) + s_u(small)
    assert y * s_inverse(y) == s_one(small)


def test_inverse_cap_bounds_nilpotency(cfg):
    # basis(i)^(e p m) vanishes for every i >= 1
    m = cfg.N
    for i in range(1, 4 * cfg.e):
        assert (s_basis(cfg, i) ** (cfg.e * cfg.p * m)).is_zero()
    assert inverse_iteration_cap(cfg, 3, m) >= 3 * (cfg.e * cfg.p * m - 1) + 1


def test_precision_semantics(cfg):
    a = S(cfg, {0: 7, 3: 11})
    b = a.reduce(2)
    assert b.prec == 2 and (a + b).prec == 2 and (a * b).prec == 2
    with pytest.raises(PrecisionExhausted):
        b.reduce(3)
    assert b.lift(4).reduce(2) == b
    assert S(cfg, {1: cfg.p}).div_p() == S(cfg, {1: 1}, cfg.N - 1)
    with pytest.raises(NotDivisible):
        S(cfg, {1: 1}).div_p()


def test_config_mismatch():
    with pytest.raises(ConfigMismatch):
        s_one(P2) + s_one(P3)
    with pytest.raises(ConfigMismatch):
        s_mul(s_one(P3), s_one(P3E2))


def test_equality_requires_same_precision(cfg):
    assert s_one(cfg, 3) != s_one(cfg, 4)
    assert s_one(cfg, 3) == s_one(cfg, 4).reduce(3)


def test_from_poly_matches_oracle(cfg):
    poly = [3, -1, 4, 1, -5, 9, 2]
    want = oracles.from_poly({i: c for i, c in enumerate(poly) if c}, cfg.e, cfg.p, cfg.N)
    assert s_from_poly(cfg, poly).coeffs == want


def test_gamma_matches_oracle(cfg):
    for i in range(1, 7):
        assert s_gamma(cfg, i).coeffs == oracles.gamma(cfg.E, i, cfg.p, cfg.e, cfg.N)


def test_fil1_lift(cfg):
    x = (s_E(cfg) * S(cfg, {0: 1, 2: 3})).reduce(2)
    y = fil1_lift(x, cfg.N)
    assert y.prec == cfg.N and fil1_contains(y) and y.reduce(2) == x
    with pytest.raises(NotInFil1):
        fil1_lift(s_one(cfg, 2), 4)


def test_section_splits_projection(cfg):
    a = S(cfg, {0: 5, 1: 7, 4: 2})
    o = s_project_OK(a)
    assert s_project_OK(ok_section(o)) == o
    assert fil1_contains(a - ok_section(o))


# -- properties against the oracle -----------------------------------------


@given(config_and(2))
def test_mul_matches_oracle(t):
    cfg, a, b = t
    assert s_mul(a, b).coeffs == oracles.mul(a.coeffs, b.coeffs, cfg.p, cfg.e, cfg.N)


@given(config_and(2))
def test_add_matches_oracle(t):
    cfg, a, b = t
    mod = cfg.p**cfg.N
    want = {i: (a.coeff(i) + b.coeff(i)) % mod for i in set(a.coeffs) | set(b.coeffs)}
    assert s_add(a, b).coeffs == {i: c for i, c in want.items() if c}


@given(config_and(1))
def test_frobenius_matches_oracle(t):
    cfg, a = t
    assert s_frobenius(a).coeffs == oracles.frobenius(a.coeffs, cfg.p, cfg.e, cfg.N)


@given(config_and(1))
def test_projection_matches_oracle(t):
    cfg, a = t
    assert s_project_OK(a).coeffs == oracles.project(a.coeffs, cfg.p, cfg.e, cfg.E, cfg.N)


@given(config_and(1))
def test_phi1_matches_oracle(t):
    cfg, a = t
    f = a - ok_section(s_project_OK(a))
    assert s_phi1(f).coeffs == oracles.phi1(f.coeffs, cfg.p, cfg.e, cfg.N - 1)


@given(config_and(3))
def test_ring_laws(t):
    cfg, a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert s_frobenius(a * b) == s_frobenius(a) * s_frobenius(b)


@given(config_and(1), st.integers(1, 3))
def test_inverse_property(t, shift):
    cfg, a = t
    unit = a - a.coeff(0) + (1 + shift % (cfg.p - 1 or 1))
    if not unit.is_unit():
        unit = unit + 1
    assert unit * s_inverse(unit) == s_one(cfg)


@given(config_and(2))
def test_phi1_product_rule(t):
    cfg, s, r = t
    s = s - ok_section(s_project_OK(s))
    lhs = s_phi1(s * r)
    rhs = s_inverse(s_breuil_c(cfg)) * s_phi1(s) * s_phi1(s_E(cfg) * r)
    assert lhs == rhs


def test_c_matches_oracle(cfg):
    assert s_breuil_c(cfg).coeffs == oracles.c_const(cfg.E, cfg.p, cfg.e, cfg.N - 1)
