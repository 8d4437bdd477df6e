import pytest
from hypothesis import given
from hypothesis import strategies as st

from breuil.errors import NotAUnit, NotDivisible, PrecisionExhausted, SemanticError
from breuil.padic import (
    INFINITY,
    PadicConfig,
    PadicInt,
    factorial_tables,
    legendre,
    pa_arith,
    pa_div_p,
    pa_factorial_unit,
    pa_inverse,
    pa_val,
)

import oracles


def P(v, m, p):
    return PadicInt(v, m, p)


def test_arith_examples():
    assert pa_arith(P(3, 3, 2), P(5, 3, 2), "add") == P(0, 3, 2)
    assert P(2, 2, 3) * P(6, 2, 3) == P(3, 2, 3)
    x = P(7, 4, 5)
    assert x * 1 == x


def test_mixed_precision_takes_minimum():
    assert (P(5, 4, 2) + P(1, 2, 2)).prec == 2


@given(st.integers(), st.integers(), st.integers(1, 6), st.sampled_from([2, 3, 5]))
def test_arith_matches_integers(a, b, m, p):
    mod = p**m
    assert (P(a, m, p) + P(b, m, p)).value == (a + b) % mod
    assert (P(a, m, p) - P(b, m, p)).value == (a - b) % mod
    assert (P(a, m, p) * P(b, m, p)).value == (a * b) % mod


def test_valuation_examples():
    assert pa_val(P(12, 5, 2)) == 2
    assert pa_val(P(0, 4, 3)) == INFINITY
    assert pa_val(P(9, 2, 3)) == INFINITY


def test_div_p_examples():
    assert pa_div_p(P(6, 3, 2)) == P(3, 2, 2)
    assert pa_div_p(P(0, 4, 3)) == P(0, 3, 3)
    with pytest.raises(NotDivisible):
        pa_div_p(P(5, 3, 2))
    with pytest.raises(PrecisionExhausted):
        pa_div_p(P(0, 1, 2))


def test_inverse_examples():
    assert pa_inverse(P(1, 4, 3)) == P(1, 4, 3)
    assert pa_inverse(P(3, 3, 2)) == P(3, 3, 2)
    with pytest.raises(NotAUnit):
        pa_inverse(P(2, 3, 2))


@given(st.integers(0, 60), st.sampled_from([2, 3]))
def test_factorial_against_big_integers(m, p):
    cfg = PadicConfig.standard(p, 5)
    v, u = pa_factorial_unit(m, cfg)
    assert v == oracles.factorial_valuation(m, p) == legendre(m, p)
    assert u.value == oracles.factorial_unit(m, p, 5)


def test_factorial_examples():
    assert pa_factorial_unit(0, PadicConfig.standard(2, 5)) == (0, P(1, 5, 2))
    assert pa_factorial_unit(4, PadicConfig.standard(2, 5)) == (3, P(3, 5, 2))
    assert pa_factorial_unit(3, PadicConfig.standard(3, 4)) == (1, P(2, 4, 3))


def test_factorial_tables():
    fv, fu, fui = factorial_tables(3, 3**5, 40)
    for q in range(41):
        assert fv[q] == oracles.factorial_valuation(q, 3)
        assert fu[q] == oracles.factorial_unit(q, 3, 5)
        assert fu[q] * fui[q] % 3**5 == 1


@pytest.mark.parametrize("p,e,E", [(2, 1, (4, 1)), (4, 1, (-4, 1)), (3, 1, (-3, 2)),
                                   (3, 2, (-3, 1, 1)), (3, 2, (-3, 0)), (2, 0, (1,))])
def test_config_rejects(p, e, E):
    with pytest.raises(SemanticError):
        PadicConfig(p, e, E, 3)


def test_config_modulus_cap():
    with pytest.raises(SemanticError):
        PadicConfig.standard(2, 31)
    assert PadicConfig.standard(2, 30).modulus == 2**30


def test_config_identity():
    a = PadicConfig(3, 2, (-3, 0, 1), 4)
    assert a == PadicConfig(3, 2, (-3, 0, 1), 4)
    assert a.same_ring(a.with_precision(6)) and a != a.with_precision(6)
    assert a.describe() == "p=3 e=2 E=[-3,0,1] N=4"
