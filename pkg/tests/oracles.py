"""Independent reference implementations with Python integers and Fractions.

Elements of S are handled as exact rational polynomials in u; the
divided-power coordinates are recovered only at the end.  Nothing here
imports the kernels or tables of the package.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial


def q(i: int, e: int) -> int:
    return i // e


def to_poly(coeffs: dict, e: int) -> dict:
    """{i: a_i} in the basis u^i/q(i)! to {i: a_i/q(i)!} in the monomial basis."""
    return {i: Fraction(c, factorial(q(i, e))) for i, c in coeffs.items() if c}


def from_poly(poly: dict, e: int, p: int, prec: int) -> dict:
    """Back to divided-power coordinates modulo p^prec; fails if not in S."""
    mod = p**prec
    out = {}
    for i, c in poly.items():
        x = c * factorial(q(i, e))
        assert x.denominator % p != 0, f"coordinate {i} is not p-integral"
        v = x.numerator * pow(x.denominator, -1, mod) % mod
        if v:
            out[i] = v
    return out


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def mul(a: dict, b: dict, p: int, e: int, prec: int) -> dict:
    return from_poly(poly_mul(to_poly(a, e), to_poly(b, e)), e, p, prec)


def frobenius(a: dict, p: int, e: int, prec: int) -> dict:
    return from_poly({p * i: c for i, c in to_poly(a, e).items()}, e, p, prec)


def poly_E_power(E: tuple, k: int) -> dict:
    out = {0: Fraction(1)}
    base = {i: Fraction(c) for i, c in enumerate(E) if c}
    for _ in range(k):
        out = poly_mul(out, base)
    return out


def gamma(E: tuple, i: int, p: int, e: int, prec: int) -> dict:
    poly = {k: v / factorial(i) for k, v in poly_E_power(E, i).items()}
    return from_poly(poly, e, p, prec)


def project(a: dict, p: int, e: int, E: tuple, prec: int) -> tuple:
    """Image under u -> pi, as coordinates in 1, pi, ..., pi^(e-1) modulo p^prec."""
    poly = to_poly(a, e)
    if not poly:
        return (0,) * e
    deg = max(poly)
    coeffs = [poly.get(i, Fraction(0)) for i in range(deg + 1)]
    # reduce modulo the monic E
    for k in range(deg, e - 1, -1):
        top = coeffs[k]
        if top:
            coeffs[k] = Fraction(0)
            for j in range(e):
                coeffs[k - e + j] -= top * E[j]
    mod = p**prec
    out = []
    for c in coeffs[:e] + [Fraction(0)] * max(0, e - len(coeffs)):
        assert c.denominator % p != 0, "projection is not integral"
        out.append(c.numerator * pow(c.denominator, -1, mod) % mod)
    return tuple(out)


def phi1(a: dict, p: int, e: int, prec_out: int) -> dict:
    """phi(a)/p at precision prec_out, for a in Fil^1."""
    poly = {p * i: c / p for i, c in to_poly(a, e).items()}
    return from_poly(poly, e, p, prec_out)


def c_const(E: tuple, p: int, e: int, prec: int) -> dict:
    """c = phi(E)/p = E(u^p)/p."""
    poly = {p * i: Fraction(c, p) for i, c in enumerate(E) if c}
    return from_poly(poly, e, p, prec)


def factorial_valuation(m: int, p: int) -> int:
    n, v = factorial(m), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_unit(m: int, p: int, prec: int) -> int:
    n = factorial(m)
    while n % p == 0:
        n //= p
    return n % p**prec


def det(M):
    """Laplace expansion over any commutative ring with + and *."""
    d = len(M)
    if d == 1:
        return M[0][0]
    total = None
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        term = term if j % 2 == 0 else -term
        total = term if total is None else total + term
    return total
