"""Strongly divisible modules in adapted-basis form and their duality.

A module of rank d is given by a type vector n in {0,1}^d and a d x d matrix
A over S whose column i holds the coordinates of x_i = phi_1(E(u)^{n_i} e_i)
in the basis (e_i).  Its filtration is Fil^1 M = sum Fil^{n_i} S e_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ConfigMismatch, NotInFil1, PrecisionExhausted
from .linalg import (
    as_matrix,
    block,
    column,
    dot,
    from_columns,
    mat_det,
    mat_equal,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_prec,
    mat_reduce,
    mat_transpose,
    mat_vec,
    mat_zero,
    shape,
)
from .padic import PadicConfig
from .ring import (
    SElem,
    fil1_contains,
    s_breuil_c,
    s_E,
    s_frobenius,
    s_inverse,
    s_phi1,
    s_zero,
)

GENERATION_AXIOM = "phi_1(Fil^1 M) generates M"
TYPE_AXIOM = "adapted types n_i lie in {0, 1}"
SHAPE_AXIOM = "structure matrix is square of size rank"
FIL_AXIOM = "morphism maps Fil^1 into Fil^1"
PHI_AXIOM = "morphism commutes with phi_1"


@dataclass(frozen=True)
class Report:
    ok: bool
    axiom: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


OK = Report(True)


@dataclass(frozen=True)
class SDivModule:
    """Strongly divisible module at finite precision, in adapted form."""

    cfg: PadicConfig
    types: tuple
    A: tuple
    prec: int

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(int(t) for t in self.types))
        object.__setattr__(self, "A", mat_reduce(as_matrix(self.A), self.prec))

    @classmethod
    def build(cls, cfg: PadicConfig, types, A, prec: int | None = None) -> "SDivModule":
        A = as_matrix(A)
        if prec is None:
            prec = mat_prec(A)
        return cls(cfg, tuple(types), A, prec)

    @property
    def rank(self) -> int:
        return len(self.types)

    def x(self, i: int) -> tuple:
        """Coordinates of phi_1(E^{n_i} e_i)."""
        return column(self.A, i)

    def reduce(self, prec: int) -> "SDivModule":
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision {self.prec} -> {prec}")
        return SDivModule(self.cfg, self.types, self.A, prec)

    def recast(self, cfg: PadicConfig) -> "SDivModule":
        prec = min(self.prec, cfg.N)
        A = tuple(tuple(x.recast(cfg, prec) for x in row) for row in self.A)
        return SDivModule(cfg, self.types, A, prec)

    def generator(self, i: int, prec: int | None = None) -> tuple:
        """Coordinates of the adapted Fil^1 generator E^{n_i} e_i."""
        prec = self.prec if prec is None else prec
        z = s_zero(self.cfg, prec)
        g = s_E(self.cfg, prec) if self.types[i] else z + 1
        return tuple(g if k == i else z for k in range(self.rank))

    def unit_vector(self, i: int, prec: int | None = None) -> tuple:
        prec = self.prec if prec is None else prec
        z = s_zero(self.cfg, prec)
        return tuple(z + 1 if k == i else z for k in range(self.rank))


@dataclass(frozen=True)
class SDivMorphism:
    """S-linear map given by its matrix F (target rank x source rank) on e-bases."""

    source: SDivModule
    target: SDivModule
    F: tuple

    def __post_init__(self):
        object.__setattr__(self, "F", as_matrix(self.F))
        if shape(self.F) != (self.target.rank, self.source.rank):
            raise ValueError(f"matrix shape {shape(self.F)} does not match ranks")

    @property
    def prec(self) -> int:
        return min(self.source.prec, self.target.prec, mat_prec(self.F))

    def __call__(self, v) -> tuple:
        return mat_vec(self.F, v)


# -- validation ---------------------------------------------------------


def sd_validate(M: SDivModule) -> Report:
    if any(t not in (0, 1) for t in M.types):
        return Report(False, TYPE_AXIOM, f"types {M.types}")
    if shape(M.A) != (M.rank, M.rank):
        return Report(False, SHAPE_AXIOM, f"shape {shape(M.A)} for rank {M.rank}")
    det = mat_det(M.A)
    if not det.is_unit():
        return Report(False, GENERATION_AXIOM, f"det(A) = {det!r} is not a unit")
    return OK


def sd_fil1_contains(M: SDivModule, v) -> bool:
    return all(fil1_contains(x) for x, t in zip(v, M.types) if t)


def _phi1_weights(types, v, prec_out: int) -> list:
    """Coefficients w_i with phi_1(sum v_i e_i) = sum w_i x_i."""
    cfg = v[0].cfg
    c_inv = None
    w = []
    for x, t in zip(v, types):
        if t:
            if c_inv is None:
                c_inv = s_inverse(s_breuil_c(cfg, prec_out))
            w.append(c_inv * s_phi1(x.reduce(prec_out + 1)))
        else:
            w.append(s_frobenius(x.reduce(prec_out + 1)).reduce(prec_out))
    return w


def sd_phi1_apply(M: SDivModule, v) -> tuple:
    """phi_1 on Fil^1 M; an input at precision m+1 yields coordinates at precision m."""
    if len(v) != M.rank:
        raise ValueError("vector length does not match rank")
    if not sd_fil1_contains(M, v):
        raise NotInFil1("vector is not in Fil^1 M")
    m = min(x.prec for x in v) - 1
    if m < 1:
        raise PrecisionExhausted("phi_1 needs input precision >= 2")
    m = min(m, M.prec)
    w = _phi1_weights(M.types, v, m)
    A = mat_reduce(M.A, m)
    return mat_vec(A, w)


def sd_frobenius(M: SDivModule, v) -> tuple:
    """The semilinear Frobenius x -> c^-1 phi_1(E(u) x) on all of M."""
    E = s_E(M.cfg, min(x.prec for x in v))
    Ev = tuple(E * x for x in v)
    out = sd_phi1_apply(M, Ev)
    c_inv = s_inverse(s_breuil_c(M.cfg, out[0].prec))
    return tuple(c_inv * y for y in out)


def sd_evaluate(f, v) -> SElem:
    """Pairing of a coordinate functional with a coordinate vector."""
    return dot(f, v)


def sd_functional_preserves_fil1(M: SDivModule, f) -> bool:
    """Whether f sends Fil^1 M into Fil^1 S, tested on the adapted generators."""
    prec = min(x.prec for x in f)
    return all(fil1_contains(sd_evaluate(f, M.generator(i, prec))) for i in range(M.rank))


def sd_morphism_validate(f: SDivMorphism) -> Report:
    src, tgt = f.source, f.target
    if not src.cfg.same_ring(tgt.cfg):
        raise ConfigMismatch("source and target live in different rings")
    P = f.prec
    if P < 2:
        raise PrecisionExhausted("morphism validation needs precision >= 2")
    F = mat_reduce(f.F, P)
    A_src = mat_reduce(src.A, P - 1)
    for i in range(src.rank):
        img = mat_vec(F, src.generator(i, P))
        if not sd_fil1_contains(tgt, img):
            return Report(False, FIL_AXIOM, f"image of generator {i} is not in Fil^1")
        lhs = sd_phi1_apply(tgt.reduce(P), img)
        rhs = mat_vec(mat_reduce(F, P - 1), column(A_src, i))
        if tuple(lhs) != tuple(rhs):
            return Report(False, PHI_AXIOM, f"phi_1 mismatch on generator {i}")
    return OK


# -- duality -------------------------------------------------------------


def dual_types(types) -> tuple:
    return tuple(1 - t for t in types)


@lru_cache(maxsize=1024)
def sd_dual(M: SDivModule) -> SDivModule:
    """The dual module at precision prec - 1.

    Types flip to 1 - n_i.  For each dual generator f_j = E^{1-n_j} e_j^v the
    functional g_j = phi_1^v(f_j) is fixed by g_j(x_i) = phi_1(f_j(E^{n_i} e_i));
    its coordinates B_j solve B^T A = (g_j(x_i)).
    """
    P = M.prec
    if P < 2:
        raise PrecisionExhausted("dual needs precision >= 2")
    d = M.rank
    nv = dual_types(M.types)
    D = SDivModule(M.cfg, nv, mat_identity(M.cfg, d, P), P)
    G = [[None] * d for _ in range(d)]
    for j in range(d):
        fj = D.generator(j, P)
        for i in range(d):
            G[j][i] = s_phi1(sd_evaluate(fj, M.generator(i, P)))
    A_inv = mat_inverse(mat_reduce(M.A, P - 1))
    Bt = mat_mul(as_matrix(G), A_inv)
    return SDivModule(M.cfg, nv, mat_transpose(Bt), P - 1)


def sd_dual_closed_form(M: SDivModule) -> tuple:
    """c (A^-1)^T, the closed form of the dual structure matrix."""
    P = M.prec - 1
    c = s_breuil_c(M.cfg, P)
    A_inv = mat_inverse(mat_reduce(M.A, P))
    return tuple(tuple(c * a for a in row) for row in mat_transpose(A_inv))


def sd_dual_morphism(f: SDivMorphism) -> SDivMorphism:
    """Transpose of f, from dual(target) to dual(source)."""
    ds, dt = sd_dual(f.source), sd_dual(f.target)
    P = min(ds.prec, dt.prec, mat_prec(f.F))
    return SDivMorphism(dt.reduce(P), ds.reduce(P), mat_reduce(mat_transpose(f.F), P))


def sd_double_dual_map(M: SDivModule) -> SDivMorphism:
    """The evaluation map M -> M^vv, x -> (f -> f(x)), in coordinates."""
    if M.prec < 3:
        raise PrecisionExhausted("double dual needs precision >= 3")
    DD = sd_dual(sd_dual(M))
    P = DD.prec
    # (e_i^vv)(e_j^v) = e_j^v(e_i) = delta_ij, so e_i maps to e_i^vv
    ev = [[sd_evaluate(M.unit_vector(j, P), M.unit_vector(i, P)) for j in range(M.rank)]
          for i in range(M.rank)]
    return SDivMorphism(M.reduce(P), DD, mat_transpose(as_matrix(ev)))


def dual_pairing(M: SDivModule) -> tuple:
    """Matrix of x_j^v(x_i): rows j over dual generators, columns i."""
    D = sd_dual(M)
    A = mat_reduce(M.A, D.prec)
    return mat_mul(mat_transpose(D.A), A)


# -- constructions ------------------------------------------------------


def direct_sum(M1: SDivModule, M2: SDivModule) -> SDivModule:
    if not M1.cfg.same_ring(M2.cfg):
        raise ConfigMismatch("summands live in different rings")
    P = min(M1.prec, M2.prec)
    A = block(
        mat_reduce(M1.A, P),
        mat_zero(M1.cfg, M1.rank, M2.rank, P),
        mat_zero(M1.cfg, M2.rank, M1.rank, P),
        mat_reduce(M2.A, P),
    )
    return SDivModule(M1.cfg, M1.types + M2.types, A, P)


def sum_inclusions(M1: SDivModule, M2: SDivModule):
    """Canonical inclusions and projections of M1 + M2."""
    S = direct_sum(M1, M2)
    P, cfg = S.prec, S.cfg
    I1, I2 = mat_identity(cfg, M1.rank, P), mat_identity(cfg, M2.rank, P)
    Z12 = mat_zero(cfg, M1.rank, M2.rank, P)
    Z21 = mat_zero(cfg, M2.rank, M1.rank, P)
    inc1 = SDivMorphism(M1.reduce(P), S, I1 + Z21)
    inc2 = SDivMorphism(M2.reduce(P), S, Z12 + I2)
    pr1 = SDivMorphism(S, M1.reduce(P), tuple(r1 + r2 for r1, r2 in zip(I1, Z12)))
    pr2 = SDivMorphism(S, M2.reduce(P), tuple(r1 + r2 for r1, r2 in zip(Z21, I2)))
    return S, inc1, inc2, pr1, pr2


def sd_transport(M: SDivModule, Q) -> SDivMorphism:
    """Push the structure of M along an invertible filtered change of basis Q.

    Returns the morphism Q : M -> M' where M' has the same types and
    A' = Q A W^-1, W holding the phi_1-weights of the vectors Q E^{n_i} e_i.
    The target is known at precision prec - 1.
    """
    Q = as_matrix(Q)
    P = min(M.prec, mat_prec(Q))
    m = P - 1
    cols = []
    for i in range(M.rank):
        img = mat_vec(mat_reduce(Q, P), M.generator(i, P))
        if not sd_fil1_contains(M, img):
            raise NotInFil1(f"Q does not preserve Fil^1 on generator {i}")
        cols.append(_phi1_weights(M.types, img, m))
    W = from_columns(cols)
    Qm = mat_reduce(Q, m)
    A2 = mat_mul(mat_mul(Qm, mat_reduce(M.A, m)), mat_inverse(W))
    target = SDivModule(M.cfg, M.types, A2, m)
    return SDivMorphism(M.reduce(m), target, Qm)


def compose(g: SDivMorphism, f: SDivMorphism) -> SDivMorphism:
    """g after f."""
    P = min(f.prec, g.prec)
    F = mat_mul(mat_reduce(g.F, P), mat_reduce(f.F, P))
    return SDivMorphism(f.source.reduce(P), g.target.reduce(P), F)


def same_data(M1: SDivModule, M2: SDivModule) -> bool:
    return M1.types == M2.types and M1.prec == M2.prec and mat_equal(M1.A, M2.A)
