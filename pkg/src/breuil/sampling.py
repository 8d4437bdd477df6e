"""Random elements, modules and presentations for the property suites."""
from __future__ import annotations

import numpy as np

from .linalg import mat_mul, mat_reduce
from .padic import PadicConfig
from .ring import (
    SElem,
    ok_section,
    s_E,
    s_breuil_c,
    s_frobenius,
    s_inverse,
    s_one,
    s_phi1,
    s_project_OK,
)
from .sdiv import SDivModule, SDivMorphism, sd_transport
from .torsion import ExtensionData, TorsionPresentation, t_make

DEFAULT_SUPPORT = 6


def rng_from(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_selem(cfg: PadicConfig, rng, prec: int | None = None, length: int | None = None,
                 density: float = 0.6) -> SElem:
    prec = cfg.N if prec is None else prec
    length = DEFAULT_SUPPORT * cfg.e if length is None else length
    mod = cfg.p**prec
    vals = rng.integers(0, mod, size=length)
    vals[rng.random(length) > density] = 0
    return SElem(cfg, [int(v) for v in vals], prec)


def random_unit(cfg: PadicConfig, rng, prec: int | None = None) -> SElem:
    a = random_selem(cfg, rng, prec)
    c0 = a.coeff(0)
    if c0 % cfg.p == 0:
        a = a + (1 + int(rng.integers(0, cfg.p - 1)))
    return a


def random_nonunit(cfg: PadicConfig, rng, prec: int | None = None) -> SElem:
    """An element of the maximal ideal (u, p)."""
    a = random_selem(cfg, rng, prec)
    return a - a.coeff(0) + cfg.p * int(rng.integers(0, cfg.p**max(a.prec - 1, 0)))


def random_fil1(cfg: PadicConfig, rng, prec: int | None = None) -> SElem:
    """A random element of Fil^1 S: subtract the section of its projection."""
    a = random_selem(cfg, rng, prec)
    return a - ok_section(s_project_OK(a))


def random_types(cfg, rng, d: int) -> tuple:
    return tuple(int(t) for t in rng.integers(0, 2, size=d))


def random_invertible(cfg: PadicConfig, rng, d: int, prec: int | None = None,
                      types: tuple | None = None) -> tuple:
    """Units on the diagonal, maximal-ideal entries elsewhere.

    With ``types`` the matrix also sends E^{n_i} e_i into Fil^1: entries
    (k, i) with n_k = 1 and n_i = 0 are taken in Fil^1 S.
    """
    rows = []
    for k in range(d):
        row = []
        for i in range(d):
            if i == k:
                x = random_unit(cfg, rng, prec)
            elif types is not None and types[k] and not types[i]:
                x = random_fil1(cfg, rng, prec)
            else:
                x = random_nonunit(cfg, rng, prec)
            row.append(x)
        rows.append(tuple(row))
    return tuple(rows)


def random_sdiv(cfg: PadicConfig, rng, d: int, prec: int | None = None,
                types: tuple | None = None) -> SDivModule:
    prec = cfg.N if prec is None else prec
    types = random_types(cfg, rng, d) if types is None else tuple(types)
    L = random_invertible(cfg, rng, d, prec)
    U = random_invertible(cfg, rng, d, prec)
    return SDivModule(cfg, types, mat_mul(L, U), prec)


def random_filtered_automorphism(M: SDivModule, rng) -> tuple:
    """An invertible matrix mapping Fil^1 M into itself."""
    return random_invertible(M.cfg, rng, M.rank, M.prec, types=M.types)


def random_isomorphism(M: SDivModule, rng) -> SDivMorphism:
    """A random isomorphism out of M, with its target at M's precision.

    The transport loses one unit of precision, so it runs one level higher
    and the result is recast.
    """
    cfg = M.cfg
    boosted = cfg.with_precision(cfg.N + 1)
    Mb = SDivModule(boosted, M.types,
                    tuple(tuple(x.recast(boosted, M.prec + 1) for x in row) for row in M.A),
                    M.prec + 1)
    f = sd_transport(Mb, random_filtered_automorphism(Mb, rng))
    tgt = f.target.recast(cfg)
    F = tuple(tuple(x.recast(cfg, M.prec) for x in row) for row in f.F)
    return SDivMorphism(M, tgt.reduce(M.prec), F)


# -- torsion -------------------------------------------------------------


def random_rank1_presentation(cfg: PadicConfig, rng, t: int, k: int,
                              prec: int | None = None) -> TorsionPresentation:
    """Cover (t, A), subcover (t, phi(v) v^-1 A), iota = p^k v, W = v^-1.

    phi_1 of iota(E^t e') has weight p^k phi(v) in both types, which fixes the
    subcover's structure constant.
    """
    prec = cfg.N if prec is None else prec
    A = random_unit(cfg, rng, prec)
    v = random_unit(cfg, rng, prec)
    v_inv = s_inverse(v)
    A_sub = s_frobenius(v) * v_inv * A
    cover = SDivModule(cfg, (t,), ((A,),), prec)
    sub = SDivModule(cfg, (t,), ((A_sub,),), prec)
    return t_make(cover, sub, ((v.scale(cfg.p**k),),), k, ((v_inv,),))


def _weight(cfg, t: int, y: SElem, prec: int) -> SElem:
    """phi_1-weight of y e in a rank-1 module of type t (y in Fil^t S)."""
    if t:
        return s_inverse(s_breuil_c(cfg, prec)) * s_phi1(y.reduce(prec + 1))
    return s_frobenius(y).reduce(prec)


def random_extension(cfg: PadicConfig, rng, tM: int | None = None, tN: int | None = None,
                     kM: int = 1, kN: int = 1):
    """Random rank-1 by rank-1 extension data with nontrivial choices.

    Returns (resM, resN, ext).  The kernel lift is m = p^kM t and the
    off-diagonal phi block is p^max(kM-kN, 0) r; the subcover block a then
    solves iota_M a = m A'_N - phi_1(E^tN m) + p^kN phi(v_N) Mx, computed one
    precision level higher so that nothing is lost.
    """
    rng = rng_from(rng)
    tM = int(rng.integers(0, 2)) if tM is None else tM
    tN = int(rng.integers(0, 2)) if tN is None else tN
    N = cfg.N
    hi = cfg.with_precision(N + 1)
    resM = random_rank1_presentation(hi, rng, tM, kM)
    resN = random_rank1_presentation(hi, rng, tN, kN)
    p = cfg.p
    t = random_fil1(hi, rng) if (tM and not tN) else random_selem(hi, rng)
    r = random_selem(hi, rng)
    Mx = r.scale(p ** max(kM - kN, 0))
    m_hat = t.scale(p**kM)

    phi_vN = s_frobenius(s_inverse(resN.W[0][0]))
    AM, AN, AN_sub = resM.cover.A[0][0], resN.cover.A[0][0], resN.subcover.A[0][0]
    EtN = s_E(hi) if tN else s_one(hi)
    w = _weight(hi, tM, EtN * t, N)
    shift = max(kN - kM, 0)
    rhs = (t.reduce(N) * AN_sub.reduce(N) - w * AM.reduce(N)
           + phi_vN.reduce(N).scale(p**shift) * r.reduce(N))
    a = resM.W[0][0].reduce(N) * rhs

    def low(x):
        return x.recast(cfg, min(x.prec, N))

    def low_pres(T):
        cover = T.cover.recast(cfg)
        sub = T.subcover.recast(cfg)
        P = min(cover.prec, sub.prec)
        return t_make(cover.reduce(P), sub.reduce(P),
                      mat_reduce(tuple(tuple(low(x) for x in row) for row in T.iota), P),
                      T.n, mat_reduce(tuple(tuple(low(x) for x in row) for row in T.W), P))

    ext = ExtensionData(
        phi_images=((low(Mx), low(AN)),),
        kernel_lifts=((low(m_hat),),),
        sub_phi=((low(a),),),
    )
    return low_pres(resM), low_pres(resN), ext


def split_extension(resM: TorsionPresentation, resN: TorsionPresentation) -> ExtensionData:
    cfg, P = resM.cfg, min(resM.prec, resN.prec)
    dM, dN = resM.rank, resN.rank
    z = SElem(cfg, None, P)
    AN = mat_reduce(resN.cover.A, P)
    phi = tuple(tuple([z] * dM) + tuple(AN[r][i] for r in range(dN)) for i in range(dN))
    kernel = tuple(tuple([z] * dM) for _ in range(dN))
    sub = tuple(tuple([z] * dM) for _ in range(dN))
    return ExtensionData(phi, kernel, sub)


__all__ = [
    "rng_from",
    "random_selem",
    "random_unit",
    "random_nonunit",
    "random_fil1",
    "random_types",
    "random_invertible",
    "random_sdiv",
    "random_filtered_automorphism",
    "random_isomorphism",
    "random_rank1_presentation",
    "random_extension",
    "split_extension",
]
