"""The ring S_m = S/p^m over the divided-power basis u^i / floor(i/e)!.

S is the p-adically completed divided-power envelope of W[u] along E(u)
(W = Z_p here).  An element known modulo p^m has finitely many nonzero
coordinates, stored densely as an int64 vector without trailing zeros.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    ConfigMismatch,
    InternalPrecisionExceeded,
    NonTermination,
    NotAUnit,
    NotDivisible,
    NotInFil1,
    PrecisionExhausted,
)
from .padic import PadicConfig, PadicInt, factorial_tables

_EMPTY = np.zeros(0, dtype=np.int64)


class _Tables:
    """Per-configuration lookup tables, grown on demand."""

    def __init__(self, cfg: PadicConfig):
        self.cfg = cfg
        self.lock = threading.Lock()
        self.qcap = -1
        self.fv = self.fu = self.fui = _EMPTY
        self.ppow = {}
        self.proj_rows = np.zeros((0, cfg.e), dtype=np.int64)
        self._pi_power = None  # exact coordinates of pi^(len(proj_rows) - 1)
        self.ensure_q(16)

    def ensure_q(self, qmax: int):
        if qmax <= self.qcap:
            return
        with self.lock:
            if qmax <= self.qcap:
                return
            cap = max(qmax, 2 * self.qcap + 1)
            fv, fu, fui = factorial_tables(self.cfg.p, self.cfg.modulus, cap)
            self.fv = np.array(fv, dtype=np.int64)
            self.fu = np.array(fu, dtype=np.int64)
            self.fui = np.array(fui, dtype=np.int64)
            self.qcap = cap

    def ensure_index(self, k: int):
        self.ensure_q(k // self.cfg.e + 1)

    def powers(self, m: int) -> np.ndarray:
        arr = self.ppow.get(m)
        if arr is None:
            p, mod = self.cfg.p, self.cfg.p**m
            arr = np.array([pow(p, s, mod) for s in range(m)], dtype=np.int64)
            self.ppow[m] = arr
        return arr

    def projection_rows(self, length: int) -> np.ndarray:
        """Rows pi^i / floor(i/e)! modulo p^N in the basis 1, pi, ..., pi^(e-1)."""
        if length <= self.proj_rows.shape[0]:
            return self.proj_rows
        with self.lock:
            have = self.proj_rows.shape[0]
            if length <= have:
                return self.proj_rows
            cfg = self.cfg
            e, p, mod = cfg.e, cfg.p, cfg.modulus
            target = max(length, 2 * have)
            self.ensure_q(target // e + 1)
            rows = [self.proj_rows] if have else []
            new = np.zeros((target - have, e), dtype=np.int64)
            cur = self._pi_power
            for idx, i in enumerate(range(have, target)):
                if i == 0:
                    cur = [1] + [0] * (e - 1)
                else:
                    top = cur[-1]
                    cur = [0] + cur[:-1]
                    if top:
                        cur = [c - top * E for c, E in zip(cur, cfg.E[:-1])]
                v = int(self.fv[i // e])
                d = p**v
                row = []
                for c in cur:
                    if c % d:
                        raise InternalPrecisionExceeded(
                            f"pi^{i} is not divisible by floor({i}/{e})! coordinatewise"
                        )
                    row.append((c // d) % mod * int(self.fui[i // e]) % mod)
                new[idx] = row
            self._pi_power = cur
            rows.append(new)
            self.proj_rows = np.concatenate(rows, axis=0)
            return self.proj_rows


def tables(cfg: PadicConfig) -> _Tables:
    t = cfg._cache.get("tables")
    if t is None:
        t = cfg._cache.setdefault("tables", _Tables(cfg))
    return t


def _trim(arr: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(arr)
    if nz.size == 0:
        return _EMPTY
    return np.ascontiguousarray(arr[: nz[-1] + 1], dtype=np.int64)


class SElem:
    """An element of S/p^prec: sum_i a_i u^i / floor(i/e)!.

    ``coeffs`` may be a mapping ``{index: int}`` or a sequence of integers.
    """

    __slots__ = ("cfg", "prec", "_c")

    def __init__(self, cfg: PadicConfig, coeffs=None, prec: int | None = None):
        if prec is None:
            prec = cfg.N
        if not 0 <= prec <= cfg.N:
            raise PrecisionExhausted(f"precision {prec} outside [0, {cfg.N}]")
        mod = cfg.p**prec
        if coeffs is None:
            arr = _EMPTY
        elif isinstance(coeffs, dict):
            if coeffs:
                if min(coeffs) < 0:
                    raise ValueError("basis indices must be nonnegative")
                arr = np.zeros(max(coeffs) + 1, dtype=np.int64)
                for i, c in coeffs.items():
                    arr[i] = int(c) % mod
            else:
                arr = _EMPTY
        else:
            arr = np.array([int(c) % mod for c in coeffs], dtype=np.int64)
        self.cfg = cfg
        self.prec = prec
        self._c = _trim(arr)

    @classmethod
    def _raw(cls, cfg, arr, prec):
        obj = cls.__new__(cls)
        obj.cfg = cfg
        obj.prec = prec
        obj._c = _trim(arr % (cfg.p**prec)) if prec else _EMPTY
        return obj

    # -- views ---------------------------------------------------------

    @property
    def coeffs(self) -> dict:
        """Sparse view ``{index: residue}`` of the nonzero coordinates."""
        return {int(i): int(self._c[i]) for i in np.flatnonzero(self._c)}

    @property
    def array(self) -> np.ndarray:
        return self._c

    def coeff(self, i: int) -> int:
        return int(self._c[i]) if i < self._c.shape[0] else 0

    def padic(self, i: int) -> PadicInt:
        return PadicInt(self.coeff(i), self.prec, self.cfg.p)

    @property
    def degree(self) -> int:
        return self._c.shape[0] - 1

    def is_zero(self) -> bool:
        return self._c.shape[0] == 0

    def is_unit(self) -> bool:
        return self.prec > 0 and self.coeff(0) % self.cfg.p != 0

    def reduce(self, prec: int) -> "SElem":
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision {self.prec} -> {prec}")
        if prec == self.prec:
            return self
        return SElem._raw(self.cfg, self._c, prec)

    def recast(self, cfg: PadicConfig, prec: int | None = None) -> "SElem":
        """Move to another precision cap of the same ring, reinterpreting representatives."""
        if not cfg.same_ring(self.cfg):
            raise ConfigMismatch("different rings")
        prec = min(self.prec, cfg.N) if prec is None else prec
        return SElem._raw(cfg, self._c, prec)

    def lift(self, prec: int) -> "SElem":
        """Reinterpret the canonical representatives at a higher precision."""
        return SElem._raw(self.cfg, self._c, prec)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SElem):
            if other.cfg is not self.cfg and not other.cfg == self.cfg:
                raise ConfigMismatch("operands live in different configurations")
            return other
        if isinstance(other, (int, np.integer)):
            return SElem(self.cfg, [int(other) % self.cfg.p**self.prec], self.prec)
        if isinstance(other, PadicInt):
            return SElem(self.cfg, [other.value], min(self.prec, other.prec))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return s_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return SElem._raw(self.cfg, -self._c, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return s_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return s_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return s_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return s_inverse(self) ** (-k)
        result = s_one(self.cfg, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, k: int) -> "SElem":
        mod = self.cfg.p**self.prec
        if self.prec == 0:
            return self
        return SElem._raw(self.cfg, self._c * (int(k) % mod) % mod, self.prec)

    def div_p(self, k: int = 1) -> "SElem":
        """Exact division by p^k, consuming k units of precision."""
        if k == 0:
            return self
        if k > self.prec:
            raise PrecisionExhausted("division would exhaust precision")
        d = self.cfg.p**k
        if np.any(self._c % d):
            raise NotDivisible(f"element is not divisible by {self.cfg.p}^{k}")
        return SElem._raw(self.cfg, self._c // d, self.prec - k)

    def __eq__(self, other):
        if not isinstance(other, SElem):
            if isinstance(other, (int, np.integer)):
                return self == self._coerce(other)
            return NotImplemented
        return (
            self.prec == other.prec
            and self.cfg.same_ring(other.cfg)
            and np.array_equal(self._c, other._c)
        )

    def __hash__(self):
        return hash((self.cfg.p, self.cfg.E, self.prec, self._c.tobytes()))

    def __repr__(self):
        body = ", ".join(f"{i}:{c}" for i, c in self.coeffs.items())
        return f"S{{{body}}}@{self.prec}"


# -- constructors ------------------------------------------------------


def s_zero(cfg: PadicConfig, prec: int | None = None) -> SElem:
    return SElem(cfg, None, prec)


def s_one(cfg: PadicConfig, prec: int | None = None) -> SElem:
    return SElem(cfg, [1], prec)


def s_basis(cfg: PadicConfig, i: int, prec: int | None = None) -> SElem:
    return SElem(cfg, {i: 1}, prec)


def s_from_poly(cfg: PadicConfig, poly, prec: int | None = None) -> SElem:
    """The element sum_k poly[k] u^k, rewritten in the divided-power basis."""
    prec = cfg.N if prec is None else prec
    t = tables(cfg)
    t.ensure_index(len(poly))
    mod = cfg.p**prec
    arr = np.zeros(len(poly), dtype=np.int64)
    for k, c in enumerate(poly):
        c = int(c)
        if c == 0:
            continue
        q = k // cfg.e
        v = int(t.fv[q])
        if v >= prec:
            continue
        arr[k] = c * cfg.p**v * int(t.fu[q]) % mod
    return SElem._raw(cfg, arr, prec)


def s_u(cfg: PadicConfig, prec: int | None = None) -> SElem:
    return s_from_poly(cfg, [0, 1], prec)


def s_E(cfg: PadicConfig, prec: int | None = None) -> SElem:
    return s_from_poly(cfg, cfg.E, prec)


# -- ring operations ---------------------------------------------------


def _common(a: SElem, b: SElem) -> int:
    if not (a.cfg is b.cfg or a.cfg == b.cfg):
        raise ConfigMismatch("operands live in different configurations")
    return min(a.prec, b.prec)


def s_add(a: SElem, b: SElem) -> SElem:
    m = _common(a, b)
    if m == 0:
        return SElem(a.cfg, None, 0)
    x, y = a._c, b._c
    if x.shape[0] < y.shape[0]:
        x, y = y, x
    out = x.copy()
    out[: y.shape[0]] += y
    return SElem._raw(a.cfg, out, m)


def s_mul(a: SElem, b: SElem) -> SElem:
    """Bilinear extension of basis(i) basis(j) = [q(i+j)!/(q(i)! q(j)!)] basis(i+j)."""
    m = _common(a, b)
    cfg = a.cfg
    if m == 0 or a.is_zero() or b.is_zero():
        return SElem(cfg, None, m)
    t = tables(cfg)
    t.ensure_index(a._c.shape[0] + b._c.shape[0])
    mod = cfg.p**m
    x = a._c if a.prec == m else a._c % mod
    y = b._c if b.prec == m else b._c % mod
    out = kernels.mul(x, y, cfg.e, t.fv, t.fu, t.fui, t.powers(m), m, mod)
    return SElem._raw(cfg, out, m)


def s_frobenius(a: SElem) -> SElem:
    """phi: basis(i) -> [q(pi)!/q(i)!] basis(pi); coefficients fixed since k = F_p."""
    cfg = a.cfg
    if a.is_zero():
        return a
    t = tables(cfg)
    t.ensure_index(cfg.p * a._c.shape[0])
    m = a.prec
    out = kernels.frobenius(a._c, cfg.p, cfg.e, t.fv, t.fu, t.fui, t.powers(m), m, cfg.p**m)
    return SElem._raw(cfg, out, m)


@dataclass(frozen=True)
class OKElem:
    """An element of O_K/p^prec in the basis 1, pi, ..., pi^(e-1)."""

    cfg: PadicConfig
    prec: int
    coeffs: tuple

    def __post_init__(self):
        mod = self.cfg.p**self.prec
        c = tuple(int(x) % mod for x in self.coeffs)
        if len(c) != self.cfg.e:
            raise ValueError(f"expected {self.cfg.e} coordinates")
        object.__setattr__(self, "coeffs", c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "OKElem") -> "OKElem":
        m = min(self.prec, other.prec)
        return OKElem(self.cfg, m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "OKElem") -> "OKElem":
        e = self.cfg.e
        m = min(self.prec, other.prec)
        prod = [0] * (2 * e - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                prod[i + j] += a * b
        E = self.cfg.E
        for k in range(2 * e - 2, e - 1, -1):
            top = prod[k]
            if top:
                prod[k] = 0
                for j in range(e):
                    prod[k - e + j] -= top * E[j]
        return OKElem(self.cfg, m, prod[:e])

    def __eq__(self, other):
        if not isinstance(other, OKElem):
            return NotImplemented
        return self.prec == other.prec and self.coeffs == other.coeffs and self.cfg.same_ring(other.cfg)

    def __hash__(self):
        return hash((self.prec, self.coeffs))

    def __repr__(self):
        return f"O[{', '.join(map(str, self.coeffs))}]@{self.prec}"


def s_project_OK(a: SElem) -> OKElem:
    """Image under u -> pi in O_K/p^prec."""
    cfg = a.cfg
    m = a.prec
    if a.is_zero() or m == 0:
        return OKElem(cfg, m, [0] * cfg.e)
    rows = tables(cfg).projection_rows(a._c.shape[0])
    out = kernels.project(a._c, rows, cfg.p**m)
    return OKElem(cfg, m, [int(x) for x in out])


def ok_section(o: OKElem) -> SElem:
    """The lift sum_j o_j u^j of an O_K element (a set-theoretic section of the projection)."""
    return SElem(o.cfg, list(o.coeffs), o.prec)


def fil1_contains(a: SElem) -> bool:
    """Membership in Fil^1 S_m, decided as the kernel of S_m -> O_K/p^m."""
    return s_project_OK(a).is_zero()


def fil1_lift(a: SElem, prec: int) -> SElem:
    """Lift ``a`` (in Fil^1 S_m) to an element of Fil^1 S_prec, prec >= m.

    Uses the section u^j -> basis(j), j < e, to remove the projection.
    """
    m = a.prec
    if prec < m:
        raise PrecisionExhausted("fil1_lift cannot lower precision")
    if not fil1_contains(a):
        raise NotInFil1("element is not in Fil^1")
    x = a.lift(prec)
    o = s_project_OK(x)
    if o.is_zero():
        return x
    d = a.cfg.p**m
    if any(c % d for c in o.coeffs):
        raise InternalPrecisionExceeded("projection of lift is not divisible by p^m")
    return x - ok_section(o)


def s_gamma(cfg: PadicConfig, i: int, prec: int | None = None) -> SElem:
    """The divided power E(u)^i / i!."""
    if i < 1:
        raise ValueError("divided power index must be >= 1")
    prec = cfg.N if prec is None else prec
    poly = [1]
    for _ in range(i):
        nxt = [0] * (len(poly) + cfg.e)
        for a, ca in enumerate(poly):
            if ca:
                for b, cb in enumerate(cfg.E):
                    nxt[a + b] += ca * cb
        poly = nxt
    t = tables(cfg)
    t.ensure_q(max(i, len(poly) // cfg.e + 1))
    p, mod = cfg.p, cfg.p**prec
    vi = int(t.fv[i])
    ui_inv = int(t.fui[i])
    arr = np.zeros(len(poly), dtype=np.int64)
    for k, c in enumerate(poly):
        if c == 0:
            continue
        q = k // cfg.e
        s = int(t.fv[q]) - vi
        if s < 0:
            d = p ** (-s)
            if c % d:
                raise InternalPrecisionExceeded(f"coordinate {k} of E^{i}/{i}! is not integral")
            c //= d
            s = 0
        if s >= prec:
            continue
        arr[k] = c % mod * p**s % mod * int(t.fu[q]) % mod * ui_inv % mod
    return SElem._raw(cfg, arr, prec)


def s_phi1(a: SElem) -> SElem:
    """phi(a)/p for a in Fil^1 S_(m+1); the result lives in S_m."""
    if a.prec < 2:
        raise PrecisionExhausted("phi_1 needs input precision >= 2")
    if not fil1_contains(a):
        raise NotInFil1("phi_1 applied outside Fil^1 S")
    return s_frobenius(a).div_p(1)


def s_breuil_c(cfg: PadicConfig, prec: int | None = None) -> SElem:
    """c = phi_1(E(u)), by default at precision N-1."""
    prec = cfg.N - 1 if prec is None else prec
    key = ("c", prec)
    c = cfg._cache.get(key)
    if c is None:
        c = s_phi1(s_E(cfg, prec + 1))
        if not c.is_unit():
            raise NotAUnit("phi_1(E) is not a unit; configuration is inconsistent")
        cfg._cache[key] = c
    return c


def inverse_iteration_cap(cfg: PadicConfig, support: int, prec: int) -> int:
    """Upper bound on the nilpotency index of an element with ``support`` basis
    terms of positive index: each basis(i), i >= 1, has (e p m)-th power 0 mod p^m."""
    b = cfg.e * cfg.p * max(prec, 1)
    return max(cfg.e * cfg.N * cfg.p**2, support * (b - 1) + 1)


def s_inverse(a: SElem) -> SElem:
    """Inverse of a unit: a0^-1 * sum_k (-z)^k with a = a0 (1 + z).

    The series is summed in the grouped form prod_j (1 + y^(2^j)), y = -z,
    which equals sum_{k < 2^J} y^k and stops once y^(2^J) vanishes.
    """
    cfg, m = a.cfg, a.prec
    if not a.is_unit():
        raise NotAUnit("constant coordinate is divisible by p")
    mod = cfg.p**m
    inv0 = pow(a.coeff(0), -1, mod)
    one = s_one(cfg, m)
    y = one - a.scale(inv0)
    cap = inverse_iteration_cap(cfg, len(y.coeffs), m)
    total = one
    power = y
    span = 1
    while not power.is_zero():
        if span > cap:
            raise NonTermination("inverse series exceeded its nilpotency bound")
        total = total * (one + power)
        power = power * power
        span *= 2
    return total.scale(inv0)
