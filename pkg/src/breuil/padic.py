"""Arithmetic in Z/p^m with explicit precision.

Every :class:`PadicInt` carries the precision it is known at; mixed-precision
operations land at the smaller precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NotAUnit, NotDivisible, PrecisionExhausted, SemanticError

INFINITY = math.inf

# int64 kernels multiply two residues before reducing
MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def valuation(n: int, p: int) -> int | float:
    """p-adic valuation of a Python integer (``INFINITY`` for zero)."""
    if n == 0:
        return INFINITY
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicConfig:
    """Prime p, ramification e, Eisenstein polynomial E(u) and precision N.

    ``E`` lists coefficients from the constant term upwards.
    """

    p: int
    e: int
    E: tuple
    N: int
    _cache: dict = field(default_factory=dict, init=False, repr=False,
                         compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "E", tuple(int(c) for c in self.E))
        p, e, E, N = self.p, self.e, self.E, self.N
        if not is_prime(p):
            raise SemanticError(f"p={p} is not prime")
        if e < 1:
            raise SemanticError("ramification degree must be >= 1")
        if N < 1:
            raise SemanticError("precision N must be >= 1")
        if len(E) != e + 1:
            raise SemanticError(f"E must have e+1={e + 1} coefficients, got {len(E)}")
        if E[-1] != 1:
            raise SemanticError("E must be monic")
        if any(c % p for c in E[:-1]):
            raise SemanticError("non-leading coefficients of E must be divisible by p")
        if E[0] % (p * p) == 0:
            raise SemanticError("p^2 divides the constant term of E: not Eisenstein")
        if p**N >= MAX_MODULUS:
            raise SemanticError(f"p^N = {p}^{N} exceeds the supported modulus 2^31")

    @classmethod
    def standard(cls, p: int, N: int) -> "PadicConfig":
        """The unramified configuration E(u) = u - p."""
        return cls(p, 1, (-p, 1), N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def with_precision(self, N: int) -> "PadicConfig":
        return PadicConfig(self.p, self.e, self.E, N)

    def same_ring(self, other: "PadicConfig") -> bool:
        return (self.p, self.e, self.E) == (other.p, other.e, other.E)

    def describe(self) -> str:
        return f"p={self.p} e={self.e} E=[{','.join(str(c) for c in self.E)}] N={self.N}"


@dataclass(frozen=True)
class PadicInt:
    """A residue class modulo p^prec, stored as its least nonnegative representative."""

    value: int
    prec: int
    p: int

    def __post_init__(self):
        if self.prec < 0:
            raise PrecisionExhausted("negative precision")
        object.__setattr__(self, "value", int(self.value) % (self.p**self.prec))

    @property
    def modulus(self) -> int:
        return self.p**self.prec

    def _check(self, other):
        if isinstance(other, int):
            return PadicInt(other, self.prec, self.p)
        if not isinstance(other, PadicInt) or other.p != self.p:
            raise TypeError("operands must share the same prime")
        return other

    def __add__(self, other):
        return pa_arith(self, self._check(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return pa_arith(self, self._check(other), "sub")

    def __rsub__(self, other):
        return pa_arith(self._check(other), self, "sub")

    def __mul__(self, other):
        return pa_arith(self, self._check(other), "mul")

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(-self.value, self.prec, self.p)

    def is_zero(self) -> bool:
        return self.value == 0

    def reduce(self, prec: int) -> "PadicInt":
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision {self.prec} -> {prec}")
        return PadicInt(self.value, prec, self.p)

    def __repr__(self):
        return f"{self.value} mod {self.p}^{self.prec}"


def pa_arith(a: PadicInt, b: PadicInt, op: str) -> PadicInt:
    if a.p != b.p:
        raise TypeError("operands must share the same prime")
    prec = min(a.prec, b.prec)
    if op == "add":
        v = a.value + b.value
    elif op == "sub":
        v = a.value - b.value
    elif op == "mul":
        v = a.value * b.value
    else:
        raise ValueError(f"unknown operation {op!r}")
    return PadicInt(v, prec, a.p)


def pa_val(a: PadicInt):
    """Valuation of ``a``; ``INFINITY`` when a is zero at its precision."""
    if a.value == 0:
        return INFINITY
    return valuation(a.value, a.p)


def pa_div_p(a: PadicInt) -> PadicInt:
    if a.value % a.p:
        raise NotDivisible(f"{a!r} is not divisible by {a.p}")
    if a.prec <= 1:
        raise PrecisionExhausted("dividing by p would leave precision 0")
    return PadicInt(a.value // a.p, a.prec - 1, a.p)


def pa_inverse(a: PadicInt) -> PadicInt:
    if a.value % a.p == 0:
        raise NotAUnit(f"{a!r} is not a unit")
    return PadicInt(pow(a.value, -1, a.modulus), a.prec, a.p)


def legendre(m: int, p: int) -> int:
    """v_p(m!) = sum_k floor(m / p^k)."""
    v, q = 0, m
    while q:
        q //= p
        v += q
    return v


def pa_factorial_unit(m: int, cfg: PadicConfig) -> tuple[int, PadicInt]:
    """Return ``(v, u)`` with m! = p^v * u and u reported modulo p^N."""
    p, mod = cfg.p, cfg.modulus
    u = 1
    for k in range(2, m + 1):
        while k % p == 0:
            k //= p
        u = u * k % mod
    return legendre(m, p), PadicInt(u, cfg.N, p)


def factorial_tables(p: int, mod: int, qmax: int):
    """Valuations, unit parts and inverse unit parts of q! for q <= qmax, mod ``mod``."""
    fv = [0] * (qmax + 1)
    fu = [1] * (qmax + 1)
    for q in range(1, qmax + 1):
        k, v = q, 0
        while k % p == 0:
            k //= p
            v += 1
        fv[q] = fv[q - 1] + v
        fu[q] = fu[q - 1] * k % mod
    fui = [pow(x, -1, mod) if mod > 1 else 0 for x in fu]
    return fv, fu, fui
