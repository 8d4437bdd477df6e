"""Inner loops of S_N arithmetic on dense int64 coefficient vectors.

Coefficient ``k`` of a vector multiplies the divided-power basis element
u^k / floor(k/e)!.  Factorial ratios enter through three tables indexed by
q = floor(k/e): ``fv[q] = v_p(q!)``, ``fu[q]`` the unit part of q! and
``fui[q]`` its inverse, both modulo p^N.  ``ppow[s] = p^s mod p^m`` for
``s < m``; a ratio of valuation ``>= m`` contributes nothing.

Each kernel exists twice: a compiled loop (numba, when available) and a
vectorised numpy version.  ``mul``/``frobenius``/``project`` point at the
compiled versions unless numba is missing or disabled.
"""
from __future__ import annotations

import numpy as np

from ._accel import NUMBA_OK, njit


def mul_numpy(a, b, e, fv, fu, fui, ppow, m, mod):
    out = np.zeros(a.shape[0] + b.shape[0] - 1, dtype=np.int64)
    I = np.flatnonzero(a)
    J = np.flatnonzero(b)
    if I.size == 0 or J.size == 0:
        return out
    qi = I // e
    qj = J // e
    K = I[:, None] + J[None, :]
    qk = K // e
    s = fv[qk] - fv[qi][:, None] - fv[qj][None, :]
    keep = s < m
    wa = a[I] * fui[qi] % mod
    wb = b[J] * fui[qj] % mod
    t = wa[:, None] * wb[None, :] % mod
    t = t * fu[qk] % mod
    t = t * ppow[np.minimum(s, m - 1)] % mod
    t[~keep] = 0
    np.add.at(out, K.ravel(), t.ravel())
    return out % mod


def _mul_loop(a, b, e, fv, fu, fui, ppow, m, mod):
    la = a.shape[0]
    lb = b.shape[0]
    out = np.zeros(la + lb - 1, dtype=np.int64)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        qi = i // e
        wi = ai * fui[qi] % mod
        for j in range(lb):
            bj = b[j]
            if bj == 0:
                continue
            qj = j // e
            k = i + j
            qk = k // e
            s = fv[qk] - fv[qi] - fv[qj]
            if s >= m:
                continue
            t = wi * bj % mod
            t = t * fui[qj] % mod
            t = t * fu[qk] % mod
            t = t * ppow[s] % mod
            out[k] = (out[k] + t) % mod
    return out


def frobenius_numpy(a, p, e, fv, fu, fui, ppow, m, mod):
    out = np.zeros(p * (a.shape[0] - 1) + 1, dtype=np.int64)
    I = np.flatnonzero(a)
    if I.size == 0:
        return out
    K = p * I
    qi = I // e
    qk = K // e
    s = fv[qk] - fv[qi]
    keep = s < m
    t = a[I] * fu[qk] % mod
    t = t * fui[qi] % mod
    t = t * ppow[np.minimum(s, m - 1)] % mod
    out[K[keep]] = t[keep]
    return out


def _frobenius_loop(a, p, e, fv, fu, fui, ppow, m, mod):
    la = a.shape[0]
    out = np.zeros(p * (la - 1) + 1, dtype=np.int64)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        qi = i // e
        k = p * i
        qk = k // e
        s = fv[qk] - fv[qi]
        if s >= m:
            continue
        t = ai * fu[qk] % mod
        t = t * fui[qi] % mod
        out[k] = t * ppow[s] % mod
    return out


def project_numpy(a, table, mod):
    """Sum_i a_i * table[i] modulo ``mod``; ``table`` has one row per basis index."""
    rows = table[: a.shape[0]] % mod
    return (a[:, None] * rows % mod).sum(axis=0) % mod


def _project_loop(a, table, mod):
    e = table.shape[1]
    out = np.zeros(e, dtype=np.int64)
    for i in range(a.shape[0]):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(e):
            out[j] = (out[j] + ai * (table[i, j] % mod)) % mod
    return out


if NUMBA_OK:
    mul_numba = njit(cache=True, nogil=True)(_mul_loop)
    frobenius_numba = njit(cache=True, nogil=True)(_frobenius_loop)
    project_numba = njit(cache=True, nogil=True)(_project_loop)
    mul, frobenius, project = mul_numba, frobenius_numba, project_numba
    BACKEND = "numba"
else:
    mul_numba = frobenius_numba = project_numba = None
    mul, frobenius, project = mul_numpy, frobenius_numpy, project_numpy
    BACKEND = "numpy"
