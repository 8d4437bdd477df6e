"""Torsion Breuil modules presented as certified cokernels.

A presentation is a pair of strongly divisible modules (cover, subcover) of
equal rank, a morphism iota : subcover -> cover and a witness matrix W with
iota W = W iota = p^n Id.  The torsion module is cover / iota(subcover); it is
killed by p^n and every quotient computation goes through W.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CertificateFailure,
    ConfigMismatch,
    InvalidExtensionData,
    LiftFailure,
    MissingWitness,
    NotDivisible,
    NotInFil1,
    PrecisionExhausted,
)
from .linalg import (
    as_matrix,
    block,
    column,
    dot,
    from_columns,
    mat_equal,
    mat_identity,
    mat_mul,
    mat_neg,
    mat_prec,
    mat_reduce,
    mat_scale,
    mat_transpose,
    mat_vec,
    mat_zero,
    permute,
    shape,
    vec_mat,
)
from .padic import PadicConfig
from .ring import (
    OKElem,
    SElem,
    fil1_contains,
    fil1_lift,
    ok_section,
    s_breuil_c,
    s_inverse,
    s_phi1,
    s_project_OK,
    s_zero,
)
from .sdiv import (
    OK,
    Report,
    SDivModule,
    SDivMorphism,
    sd_dual,
    sd_fil1_contains,
    sd_morphism_validate,
    sd_phi1_apply,
    sd_validate,
    same_data,
)


# -- S_infinity ----------------------------------------------------------


class SInfElem:
    """The class of p^(-m) * numer in S (x) K0/W, kept normalized."""

    __slots__ = ("cfg", "denom_exp", "numer")

    def __init__(self, cfg: PadicConfig, denom_exp: int, numer: SElem | None = None):
        m = denom_exp
        if m < 0:
            raise ValueError("denominator exponent must be >= 0")
        if m == 0 or numer is None:
            numer, m = SElem(cfg, None, 0), 0
        else:
            if numer.prec < m:
                raise PrecisionExhausted(f"numerator known only to precision {numer.prec} < {m}")
            numer = numer.reduce(m)
            p = cfg.p
            while m > 0 and not numer.is_zero() and not (numer.array % p).any():
                numer = numer.div_p(1)
                m -= 1
            if numer.is_zero():
                numer, m = SElem(cfg, None, 0), 0
        self.cfg = cfg
        self.denom_exp = m
        self.numer = numer

    @classmethod
    def fraction(cls, numer: SElem, m: int) -> "SInfElem":
        return cls(numer.cfg, m, numer)

    def is_zero(self) -> bool:
        return self.denom_exp == 0

    def _lifted(self, m: int) -> SElem:
        """Numerator over the common denominator p^m (m >= denom_exp)."""
        k = m - self.denom_exp
        return self.numer.lift(m).scale(self.cfg.p**k) if m else SElem(self.cfg, None, 0)

    def __add__(self, other: "SInfElem") -> "SInfElem":
        if not self.cfg.same_ring(other.cfg):
            raise ConfigMismatch("different rings")
        m = max(self.denom_exp, other.denom_exp)
        if m == 0:
            return self
        return SInfElem(self.cfg, m, self._lifted(m) + other._lifted(m))

    def __neg__(self):
        return SInfElem(self.cfg, self.denom_exp, -self.numer)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        """S-module structure; ``s`` is an SElem or an integer."""
        if self.denom_exp == 0:
            return self
        if isinstance(s, SElem):
            return SInfElem(self.cfg, self.denom_exp, self.numer * s.reduce(self.denom_exp))
        return SInfElem(self.cfg, self.denom_exp, self.numer.scale(int(s)))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SInfElem):
            return NotImplemented
        return self.denom_exp == other.denom_exp and self.numer == other.numer

    def __hash__(self):
        return hash((self.denom_exp, self.numer))

    def in_fil1(self) -> bool:
        """Membership in the image of Fil^1 S[1/p]: numerator in Fil^1 S modulo p^m."""
        return self.denom_exp == 0 or fil1_contains(self.numer)

    def phi1(self) -> "SInfElem":
        """phi_1 on Fil^1 S_infinity, through a Fil^1 lift of the numerator."""
        m = self.denom_exp
        if m == 0:
            return self
        if m + 1 > self.cfg.N:
            raise PrecisionExhausted("phi_1 on S_infinity needs precision denom_exp + 1")
        return SInfElem(self.cfg, m, s_phi1(fil1_lift(self.numer, m + 1)))

    def __repr__(self):
        return f"p^-{self.denom_exp} * {self.numer!r}"


# -- presentations -------------------------------------------------------


@dataclass(frozen=True)
class TorsionPresentation:
    cover: SDivModule
    subcover: SDivModule
    iota: tuple
    n: int
    W: tuple

    @property
    def prec(self) -> int:
        return min(self.cover.prec, self.subcover.prec, mat_prec(self.iota), mat_prec(self.W))

    @property
    def cfg(self) -> PadicConfig:
        return self.cover.cfg

    @property
    def rank(self) -> int:
        return self.cover.rank

    @property
    def iota_morphism(self) -> SDivMorphism:
        return SDivMorphism(self.subcover, self.cover, self.iota)


def _pn_identity(cfg, d, n, prec):
    return mat_identity(cfg, d, prec) if n == 0 else mat_scale(
        mat_identity(cfg, d, prec), cfg.p**n)


def t_make(cover: SDivModule, subcover: SDivModule, iota, n: int, W) -> TorsionPresentation:
    """Certify a presentation; raises CertificateFailure naming the broken identity."""
    iota, W = as_matrix(iota), as_matrix(W)
    if not cover.cfg.same_ring(subcover.cfg):
        raise ConfigMismatch("cover and subcover live in different rings")
    d = cover.rank
    if subcover.rank != d or shape(iota) != (d, d) or shape(W) != (d, d):
        raise CertificateFailure("shape: cover, subcover, iota and W must have equal rank")
    if n < 1:
        raise CertificateFailure("kill exponent n must be >= 1")
    P = min(cover.prec, subcover.prec, mat_prec(iota), mat_prec(W))
    if P < n + 2:
        raise CertificateFailure(f"precision guard: working precision {P} < n + 2 = {n + 2}")
    cover, subcover = cover.reduce(P), subcover.reduce(P)
    iota, W = mat_reduce(iota, P), mat_reduce(W, P)
    target = _pn_identity(cover.cfg, d, n, P)
    if not mat_equal(mat_mul(iota, W), target):
        raise CertificateFailure("iota . W = p^n Id fails")
    if not mat_equal(mat_mul(W, iota), target):
        raise CertificateFailure("W . iota = p^n Id fails")
    for name, mod in (("cover", cover), ("subcover", subcover)):
        rep = sd_validate(mod)
        if not rep:
            raise CertificateFailure(f"{name} is not strongly divisible: {rep.axiom}")
    rep = sd_morphism_validate(SDivMorphism(subcover, cover, iota))
    if not rep:
        raise CertificateFailure(f"iota is not a morphism: {rep.axiom}")
    return TorsionPresentation(cover, subcover, iota, n, W)


def t_quotient_by_power(M: SDivModule, n: int) -> TorsionPresentation:
    """M / p^n M with iota = p^n Id and W = Id."""
    d, P = M.rank, M.prec
    return t_make(M, M, _pn_identity(M.cfg, d, n, P), n, mat_identity(M.cfg, d, P))


def _in_image(T: TorsionPresentation, v) -> bool:
    pn = T.cfg.p**T.n
    w = mat_vec(T.W, v)
    return all(not (x.array % pn).any() for x in w)


@dataclass(frozen=True)
class TorsionElem:
    pres: TorsionPresentation
    lift: tuple
    fil1_witness: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "lift", tuple(self.lift))
        if len(self.lift) != self.pres.rank:
            raise ValueError("lift length does not match rank")
        if self.fil1_witness is not None:
            wit = tuple(self.fil1_witness)
            object.__setattr__(self, "fil1_witness", wit)
            if not sd_fil1_contains(self.pres.cover, wit):
                raise NotInFil1("witness is not in Fil^1 of the cover")
            if not _in_image(self.pres, tuple(a - b for a, b in zip(self.lift, wit))):
                raise ValueError("witness does not represent the same class")

    @property
    def prec(self) -> int:
        return min(x.prec for x in self.lift)


def t_class(T: TorsionPresentation, v, fil1: bool = False) -> TorsionElem:
    """Class of a cover vector; ``fil1=True`` uses the vector itself as witness."""
    v = tuple(v)
    return TorsionElem(T, v, v if fil1 else None)


def t_generator(T: TorsionPresentation, i: int) -> TorsionElem:
    """Class of the adapted Fil^1 generator E^{n_i} e_i, with itself as witness."""
    return t_class(T, T.cover.generator(i, T.prec), fil1=True)


def t_equal(x: TorsionElem, y: TorsionElem) -> bool:
    T = x.pres
    if y.pres is not T and y.pres != T:
        raise ValueError("elements belong to different presentations")
    m = min(x.prec, y.prec)
    if m < T.n:
        raise PrecisionExhausted(f"comparison needs precision >= n = {T.n}")
    v = tuple(a.reduce(m) - b.reduce(m) for a, b in zip(x.lift, y.lift))
    return _in_image(T, v)


def t_phi1(x: TorsionElem) -> TorsionElem:
    if x.fil1_witness is None:
        raise MissingWitness("phi_1 on a torsion class needs a Fil^1 witness")
    return TorsionElem(x.pres, sd_phi1_apply(x.pres.cover, x.fil1_witness))


def t_dual(T: TorsionPresentation) -> TorsionPresentation:
    """Dual presentation: cover dual(subcover), subcover dual(cover), iota^T, W^T."""
    if T.prec < 2:
        raise PrecisionExhausted("dual needs precision >= 2")
    cover = sd_dual(T.subcover)
    sub = sd_dual(T.cover)
    P = min(cover.prec, sub.prec)
    return t_make(cover, sub, mat_reduce(mat_transpose(T.iota), P), T.n,
                  mat_reduce(mat_transpose(T.W), P))


# -- dual elements ------------------------------------------------------


@dataclass(frozen=True)
class TorsionDualElem:
    """A functional on the subcover whose image in Hom(M, S_infinity) it represents."""

    pres: TorsionPresentation
    functional: tuple

    def __post_init__(self):
        object.__setattr__(self, "functional", tuple(self.functional))

    @property
    def prec(self) -> int:
        return min(x.prec for x in self.functional)


def t_dual_eval(f: TorsionDualElem, x: TorsionElem) -> SInfElem:
    """p^-n f(W x): W x is the subcover preimage of p^n x."""
    T = f.pres
    if x.pres is not T and x.pres != T:
        raise ValueError("functional and element belong to different presentations")
    val = dot(f.functional, mat_vec(T.W, x.lift))
    return SInfElem.fraction(val, T.n)


def t_dual_equal(f: TorsionDualElem, g: TorsionDualElem) -> bool:
    """Equality in the dual: f - g lies in iota^T(cover dual), tested through W."""
    T = f.pres
    m = min(f.prec, g.prec)
    if m < T.n:
        raise PrecisionExhausted(f"comparison needs precision >= n = {T.n}")
    diff = tuple(a.reduce(m) - b.reduce(m) for a, b in zip(f.functional, g.functional))
    pn = T.cfg.p**T.n
    return all(not (x.array % pn).any() for x in vec_mat(diff, T.W))


def t_fil1_dual_contains(f: TorsionDualElem) -> bool:
    T = f.pres
    return all(t_dual_eval(f, t_generator(T, i)).in_fil1() for i in range(T.rank))


def t_dual_fil1_lift(f: TorsionDualElem) -> tuple:
    """A lift of f into Fil^1 of the subcover dual.

    Values f(e_i) are lifted to x_i = p^-n s_i with s_i in Fil^1 S when n_i = 0;
    the lifted functional restricted to the subcover is f - r iota with
    r_i = (s_i' - s_i)/p^n.  Valid to precision prec - n.
    """
    T = f.pres
    if not t_fil1_dual_contains(f):
        raise NotInFil1("functional is not in Fil^1 of the dual")
    P = min(f.prec, T.prec)
    n, cfg = T.n, T.cfg
    Q = P - n
    if Q < 1:
        raise LiftFailure(f"precision {P} leaves nothing after dividing by p^{n}")
    fW = vec_mat(tuple(x.reduce(P) for x in f.functional), mat_reduce(T.W, P))
    r = []
    for i, t in enumerate(T.cover.types):
        if t:
            r.append(s_zero(cfg, P))
            continue
        o = s_project_OK(fW[i])
        pn = cfg.p**n
        if any(c % pn for c in o.coeffs):
            raise LiftFailure(f"value on generator {i} admits no Fil^1 numerator")
        o_div = OKElem(cfg, Q, [c // pn for c in o.coeffs])
        r.append(ok_section(o_div).lift(P))
    corr = vec_mat(tuple(r), mat_reduce(T.iota, P))
    lifted = tuple((a.reduce(P) - b).reduce(Q) for a, b in zip(f.functional, corr))
    if not sd_fil1_contains(sd_dual(T.subcover), lifted):
        raise LiftFailure("lifted functional is not in Fil^1 at the available precision")
    return lifted


def t_dual_phi1(f: TorsionDualElem, adjust=None) -> TorsionDualElem:
    """phi_1 on Fil^1 of the dual, through a Fil^1 lift to the subcover dual.

    ``adjust`` is an optional element of Fil^1 of the cover dual; adding
    adjust . iota yields another admissible lift.
    """
    T = f.pres
    lifted = t_dual_fil1_lift(f)
    Q = lifted[0].prec
    if adjust is not None:
        extra = vec_mat(tuple(a.reduce(Q) for a in adjust), mat_reduce(T.iota, Q))
        lifted = tuple(a + b for a, b in zip(lifted, extra))
    if Q - 1 < T.n:
        raise LiftFailure(
            f"phi_1 result at precision {Q - 1} is below the kill exponent {T.n}; "
            f"raise the working precision"
        )
    out = sd_phi1_apply(sd_dual(T.subcover), lifted)
    return TorsionDualElem(T, out)


# -- extensions ---------------------------------------------------------


@dataclass(frozen=True)
class ExtensionData:
    """Choices describing an extension 0 -> M -> X -> N -> 0 over resolved covers.

    phi_images[i]: the vector x_i in cover(M) + cover(N) chosen as
        phi_1(E^{n_i} (0 + e_i)) for each adapted generator of cover(N);
        its cover(N) part must equal column i of N's structure matrix.
    kernel_lifts[k]: m_k in cover(M) with (-m_k) + iota_N(e'_k) in the kernel of
        cover(X) -> X, for each basis vector e'_k of subcover(N).
    sub_phi[k] (optional): subcover(M) coordinates of phi_1 of the k-th
        N-generator of subcover(X); derived by exact division when omitted.
    """

    phi_images: tuple
    kernel_lifts: tuple
    sub_phi: tuple | None = None


def t_extension_resolve(resM: TorsionPresentation, resN: TorsionPresentation,
                        ext: ExtensionData) -> TorsionPresentation:
    """Presentation of X with cover(M) + cover(N) and the kernel basis
    iota_M(e'_j) + 0 and (-m_k) + iota_N(e'_k)."""
    if not resM.cfg.same_ring(resN.cfg):
        raise ConfigMismatch("presentations live in different rings")
    cfg = resM.cfg
    dM, dN = resM.rank, resN.rank
    P = min(resM.prec, resN.prec)
    phi_images = [tuple(v) for v in ext.phi_images]
    kernel = [tuple(v) for v in ext.kernel_lifts]
    if len(phi_images) != dN or any(len(v) != dM + dN for v in phi_images):
        raise InvalidExtensionData("phi_images must hold one cover(X) vector per N-generator")
    if len(kernel) != dN or any(len(v) != dM for v in kernel):
        raise InvalidExtensionData("kernel_lifts must hold one cover(M) vector per N'-basis vector")
    P = min([P] + [x.prec for v in phi_images + kernel for x in v])
    Mc, Nc = resM.cover.reduce(P), resN.cover.reduce(P)
    Ms, Ns = resM.subcover.reduce(P), resN.subcover.reduce(P)
    for i, v in enumerate(phi_images):
        if tuple(x.reduce(P) for x in v[dM:]) != column(Nc.A, i):
            raise InvalidExtensionData(f"phi_images[{i}] does not project to phi_1 of generator {i}")
    for k, v in enumerate(kernel):
        if Ns.types[k] == 0 and not sd_fil1_contains(Mc, v):
            raise InvalidExtensionData(f"kernel_lifts[{k}] must lie in Fil^1 of cover(M)")

    Mx = mat_reduce(from_columns([v[:dM] for v in phi_images]), P)
    K = mat_reduce(from_columns(kernel), P)
    A_X = block(Mc.A, Mx, mat_zero(cfg, dN, dM, P), Nc.A)
    cover = SDivModule(cfg, Mc.types + Nc.types, A_X, P)
    iM, iN = mat_reduce(resM.iota, P), mat_reduce(resN.iota, P)
    iota = block(iM, mat_neg(K), mat_zero(cfg, dN, dM, P), iN)

    if ext.sub_phi is not None:
        a = mat_reduce(from_columns([tuple(v) for v in ext.sub_phi]), P)
        Ps = P
    else:
        a, Ps = _derive_sub_phi(resM, cover, iota, Ns, dM, P)
    A_sub = block(mat_reduce(Ms.A, Ps), a, mat_zero(cfg, dN, dM, Ps), mat_reduce(Ns.A, Ps))
    sub = SDivModule(cfg, Ms.types + Ns.types, A_sub, Ps)

    WM, WN = mat_reduce(resM.W, P), mat_reduce(resN.W, P)
    W = block(
        mat_scale(WM, cfg.p**resN.n),
        mat_mul(mat_mul(WM, K), WN),
        mat_zero(cfg, dN, dM, P),
        mat_scale(WN, cfg.p**resM.n),
    )
    return t_make(cover, sub, iota, resM.n + resN.n, W)


def _derive_sub_phi(resM, cover, iota, Ns, dM, P):
    """Solve iota_M a_k = z_k by exact division through W_M (loses precision)."""
    cfg = cover.cfg
    dN = Ns.rank
    Q = P - 1 - resM.n
    if Q < 1:
        raise LiftFailure("not enough precision to derive the subcover structure")
    cols = []
    for k in range(dN):
        g = tuple([s_zero(cfg, P)] * dM) + Ns.generator(k, P)
        Y = sd_phi1_apply(cover, mat_vec(iota, g))
        m = Y[0].prec
        rhs = mat_vec(mat_reduce(iota, m), tuple([s_zero(cfg, m)] * dM) + column(mat_reduce(Ns.A, m), k))
        z = tuple(y - r for y, r in zip(Y, rhs))
        if any(not x.is_zero() for x in z[dM:]):
            raise InvalidExtensionData("phi_1 of a kernel generator leaves the M-part")
        wz = mat_vec(mat_reduce(resM.W, m), z[:dM])
        try:
            cols.append(tuple(x.div_p(resM.n).reduce(Q) for x in wz))
        except NotDivisible:
            raise InvalidExtensionData(
                "phi_1 of a kernel generator does not land in the kernel") from None
    return mat_reduce(from_columns(cols), Q), Q


def extension_inclusion(resM: TorsionPresentation, X: TorsionPresentation) -> tuple:
    """Matrix of cover(M) -> cover(X), e_i -> e_i + 0."""
    dM, dX = resM.rank, X.rank
    P = X.prec
    I = mat_identity(X.cfg, dM, P)
    return I + mat_zero(X.cfg, dX - dM, dM, P)


def extension_projection(X: TorsionPresentation, resN: TorsionPresentation) -> tuple:
    """Matrix of cover(X) -> cover(N), m + n -> n."""
    dN, dX = resN.rank, X.rank
    P = X.prec
    return tuple(z + i for z, i in zip(mat_zero(X.cfg, dN, dX - dN, P), mat_identity(X.cfg, dN, P)))


def t_check_resolution(resM: TorsionPresentation, resN: TorsionPresentation,
                       X: TorsionPresentation) -> Report:
    """Commutativity of the resolution diagram on every adapted generator.

    Checks that M -> X and X -> N carry subcovers into subcovers, commute with
    phi_1 on classes of Fil^1 generators, compose to zero, and that projecting
    the classes of X's N-generators reproduces N's generators.
    """
    inc = extension_inclusion(resM, X)
    proj = extension_projection(X, resN)
    P = X.prec

    # subcover images
    for k in range(resM.rank):
        v = mat_vec(inc, column(mat_reduce(resM.iota, P), k))
        if not _in_image(X, v):
            return Report(False, "inclusion respects subcovers", f"column {k}")
    for k in range(X.rank):
        v = mat_vec(proj, column(mat_reduce(X.iota, P), k))
        if not _in_image(resN, v):
            return Report(False, "projection respects subcovers", f"column {k}")

    # phi_1 squares
    for i in range(resM.rank):
        g = resM.cover.generator(i, P)
        lhs = t_phi1(t_class(X, mat_vec(inc, g), fil1=True))
        rhs_lift = sd_phi1_apply(resM.cover.reduce(P), g)
        rhs = TorsionElem(X, mat_vec(mat_reduce(inc, P - 1), rhs_lift))
        if not t_equal(lhs, rhs):
            return Report(False, "inclusion commutes with phi_1", f"generator {i}")
    for i in range(X.rank):
        g = X.cover.generator(i, P)
        lhs_lift = mat_vec(mat_reduce(proj, P - 1), t_phi1(t_class(X, g, fil1=True)).lift)
        lhs = TorsionElem(resN, lhs_lift)
        rhs = t_phi1(t_class(resN, mat_vec(proj, g), fil1=True))
        if not t_equal(lhs, rhs):
            return Report(False, "projection commutes with phi_1", f"generator {i}")

    # exactness in the middle on generators, and the bottom row reproduces N
    for i in range(resM.rank):
        v = mat_vec(proj, mat_vec(inc, resM.cover.unit_vector(i, P)))
        if not t_equal(t_class(resN, v), t_class(resN, tuple(s_zero(X.cfg, P) for _ in v))):
            return Report(False, "projection after inclusion vanishes", f"generator {i}")
    for i in range(resN.rank):
        e_i = X.cover.unit_vector(resM.rank + i, P)
        if not t_equal(t_class(resN, mat_vec(proj, e_i)), t_class(resN, resN.cover.unit_vector(i, P))):
            return Report(False, "projection reproduces N", f"generator {i}")
    return OK


def dual_extension_data(resM: TorsionPresentation, resN: TorsionPresentation,
                        ext: ExtensionData, X: TorsionPresentation) -> ExtensionData:
    """Extension data for 0 -> N^v -> X^v -> M^v -> 0 from the block inverse
    of upper-triangular structure matrices: the off-diagonal block of the
    dual becomes -c^-1 B_N Z^T B_M for an off-diagonal block Z."""
    dM, dN = resM.rank, resN.rank
    Pd = X.prec - 1
    cfg = X.cfg
    c_inv = s_inverse(s_breuil_c(cfg, Pd))
    BM, BN = sd_dual(resM.cover).A, sd_dual(resN.cover).A
    BMs, BNs = sd_dual(resM.subcover).A, sd_dual(resN.subcover).A
    BM, BN, BMs, BNs = (mat_reduce(B, Pd) for B in (BM, BN, BMs, BNs))

    def off(Bn, Z, Bm):
        return mat_scale(mat_mul(mat_mul(Bn, mat_transpose(mat_reduce(Z, Pd))), Bm), -c_inv)

    sub_A = X.subcover.A
    a = tuple(tuple(sub_A[r][c] for c in range(dM, dM + dN)) for r in range(dM))
    Mx = tuple(tuple(X.cover.A[r][c] for c in range(dM, dM + dN)) for r in range(dM))
    K = tuple(tuple(-X.iota[r][c] for c in range(dM, dM + dN)) for r in range(dM))

    phi_block = off(BNs, a, BMs)  # dN x dM, cover of X^v
    sub_block = off(BN, Mx, BM)
    phi_images = [column(phi_block, i) + column(BMs, i) for i in range(dM)]
    kernel = [column(mat_reduce(mat_transpose(K), Pd), k) for k in range(dM)]
    sub_phi = [column(sub_block, k) for k in range(dM)]
    return ExtensionData(tuple(phi_images), tuple(kernel), tuple(sub_phi))


def t_reorder(T: TorsionPresentation, perm) -> TorsionPresentation:
    """Same presentation with cover and subcover bases permuted by ``perm``."""
    perm = list(perm)
    cover = SDivModule(T.cfg, tuple(T.cover.types[i] for i in perm),
                       permute(T.cover.A, perm, perm), T.cover.prec)
    sub = SDivModule(T.cfg, tuple(T.subcover.types[i] for i in perm),
                     permute(T.subcover.A, perm, perm), T.subcover.prec)
    return t_make(cover, sub, permute(T.iota, perm, perm), T.n, permute(T.W, perm, perm))


def t_same_quotient(T1: TorsionPresentation, T2: TorsionPresentation) -> Report:
    """Whether two presentations with the same cover define the same quotient.

    Every subcover generator of one must vanish in the other; both must be
    killed by the same power of p and carry identical cover data.
    """
    P = min(T1.prec, T2.prec)
    if not same_data(T1.cover.reduce(P), T2.cover.reduce(P)):
        return Report(False, "same cover", "cover data differ")
    zero = tuple(s_zero(T1.cfg, P) for _ in range(T1.rank))
    for A, B in ((T1, T2), (T2, T1)):
        for k in range(A.rank):
            col = column(mat_reduce(A.iota, P), k)
            if not t_equal(t_class(B, col), t_class(B, zero)):
                return Report(False, "same submodule", f"generator {k} of one subcover survives")
    for i in range(T1.rank):
        e = T1.cover.unit_vector(i, P)
        if t_equal(t_class(T1, e), t_class(T1, zero)) != t_equal(t_class(T2, e), t_class(T2, zero)):
            return Report(False, "same quotient", f"generator {i}")
    return OK


def t_raise_exponent(T: TorsionPresentation, k: int = 1) -> TorsionPresentation:
    """The same quotient certified with n + k and witness p^k W."""
    return t_make(T.cover, T.subcover, T.iota, T.n + k, mat_scale(T.W, T.cfg.p**k))
