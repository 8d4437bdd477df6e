"""Named randomized invariant suites, deterministic for a fixed seed."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BreuilError
from .fixtures import et1, fixture, mult1
from .linalg import mat_equal, mat_identity, mat_reduce, mat_scalar, mat_vec
from .padic import PadicConfig
from .ring import (
    fil1_contains,
    s_E,
    s_breuil_c,
    s_frobenius,
    s_inverse,
    s_one,
    s_phi1,
    s_project_OK,
)
from .sampling import (
    random_extension,
    random_fil1,
    random_isomorphism,
    random_rank1_presentation,
    random_sdiv,
    random_selem,
    split_extension,
)
from .sdiv import (
    SDivModule,
    compose,
    dual_pairing,
    dual_types,
    sd_double_dual_map,
    sd_dual,
    sd_dual_morphism,
    sd_evaluate,
    sd_morphism_validate,
    sd_phi1_apply,
    sd_validate,
    same_data,
)
from .torsion import (
    SInfElem,
    TorsionDualElem,
    dual_extension_data,
    t_check_resolution,
    t_class,
    t_dual,
    t_dual_eval,
    t_extension_resolve,
    t_raise_exponent,
    t_reorder,
    t_same_quotient,
)

MAX_RANK = 4


def default_configs(N: int = 5) -> list[PadicConfig]:
    return [
        PadicConfig(2, 1, (-2, 1), N),
        PadicConfig(3, 1, (-3, 1), N),
        PadicConfig(3, 2, (-3, 0, 1), N),
    ]


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str):
        self.cases += 1
        if not ok:
            self.failures.append(what)

    def as_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "cases": self.cases,
                "failures": self.failures[:20]}


def _counts(n: int, scale: float) -> int:
    return max(1, int(round(n * scale)))


# -- 1. ring laws ----------------------------------------------------------


def ring_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("ring")
    for cfg in configs:
        for k in range(_counts(300, scale)):
            a, b, c = (random_selem(cfg, rng) for _ in range(3))
            tag = f"{cfg.describe()} triple {k}"
            res.check((a * b) * c == a * (b * c), f"{tag}: associativity")
            res.check(a * b == b * a, f"{tag}: commutativity")
            res.check(a * (b + c) == a * b + a * c, f"{tag}: distributivity")
        for k in range(_counts(200, scale)):
            a, b = random_selem(cfg, rng), random_selem(cfg, rng)
            tag = f"{cfg.describe()} pair {k}"
            res.check(s_frobenius(a + b) == s_frobenius(a) + s_frobenius(b), f"{tag}: phi additive")
            res.check(s_frobenius(a * b) == s_frobenius(a) * s_frobenius(b), f"{tag}: phi multiplicative")
    return res


# -- 2. Fil^1 and phi_1 ------------------------------------------------------


def phi1_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("phi1")
    for cfg in configs:
        p = cfg.p
        c = s_breuil_c(cfg)
        c_inv = s_inverse(c)
        res.check(c.is_unit(), f"{cfg.describe()}: c is a unit")
        res.check(c * c_inv == s_one(cfg, c.prec), f"{cfg.describe()}: c c^-1 = 1")
        for k in range(_counts(200, scale)):
            a = random_fil1(cfg, rng)
            res.check(fil1_contains(a) and not (s_frobenius(a).array % p).any(),
                      f"{cfg.describe()} element {k}: phi(Fil^1) in pS")
        E = s_E(cfg)
        for k in range(_counts(100, scale)):
            s, t = random_fil1(cfg, rng), random_selem(cfg, rng)
            lhs = s_phi1(s * t)
            rhs = c_inv * s_phi1(s) * s_phi1(E * t)
            res.check(lhs == rhs, f"{cfg.describe()} pair {k}: phi_1(st) = c^-1 phi_1(s) phi_1(Et)")
    return res


# -- 3. duals of strongly divisible modules ----------------------------------


def _random_fil1_vector(M: SDivModule, rng, prec: int) -> tuple:
    return tuple(random_fil1(M.cfg, rng, prec) if t else random_selem(M.cfg, rng, prec)
                 for t in M.types)


def _module_stream(rng, configs, count):
    for k in range(count):
        cfg = configs[k % len(configs)]
        d = int(rng.integers(1, MAX_RANK + 1))
        yield k, random_sdiv(cfg, rng, d)


def dual_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("dual")
    for k, M in _module_stream(rng, configs, _counts(100, scale)):
        tag = f"{M.cfg.describe()} module {k} rank {M.rank}"
        D = sd_dual(M)
        res.check(D.types == dual_types(M.types), f"{tag}: dual types 1 - n")
        res.check(bool(sd_validate(D)), f"{tag}: dual validates")
        c = s_breuil_c(M.cfg, D.prec)
        res.check(mat_equal(dual_pairing(M), mat_scalar(M.cfg, M.rank, c)), f"{tag}: B^T A = c Id")
        # phi_1^v(f)(phi_1(x)) = phi_1(f(x)) for f in Fil^1 M^v, x in Fil^1 M
        f = _random_fil1_vector(D, rng, D.prec)
        x = _random_fil1_vector(M, rng, M.prec)
        lhs = sd_evaluate(sd_phi1_apply(D, f), sd_phi1_apply(M, x))
        fx = sd_evaluate(f, tuple(v.reduce(D.prec) for v in x))
        rhs = s_phi1(fx)
        m = min(lhs.prec, rhs.prec)
        res.check(lhs.reduce(m) == rhs.reduce(m), f"{tag}: commuting square")
    return res


# -- 4. involution ------------------------------------------------------------


def involution_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("involution")
    for k, M in _module_stream(rng, configs, _counts(100, scale)):
        tag = f"{M.cfg.describe()} module {k} rank {M.rank}"
        DD = sd_dual(sd_dual(M))
        res.check(same_data(DD, M.reduce(DD.prec)), f"{tag}: double dual data-identical")
        ev = sd_double_dual_map(M)
        res.check(bool(sd_morphism_validate(ev)), f"{tag}: double-dual map validates")
        res.check(mat_equal(ev.F, mat_identity(M.cfg, M.rank, DD.prec)),
                  f"{tag}: double-dual map is the identity")
    for k, M in _module_stream(rng, configs, _counts(50, scale)):
        tag = f"{M.cfg.describe()} pair {k} rank {M.rank}"
        f = random_isomorphism(M, rng)
        g = random_isomorphism(f.target, rng)
        gf = compose(g, f)
        res.check(bool(sd_morphism_validate(gf)), f"{tag}: composite validates")
        lhs = sd_dual_morphism(gf)
        rhs = compose(sd_dual_morphism(f), sd_dual_morphism(g))
        res.check(mat_equal(lhs.F, mat_reduce(rhs.F, lhs.prec)) and lhs.prec == rhs.prec,
                  f"{tag}: (g f)^v = f^v g^v")
        res.check(bool(sd_morphism_validate(lhs)), f"{tag}: dual morphism validates")
    return res


# -- 5. torsion evaluation -----------------------------------------------------


def _random_presentation(cfg, rng):
    if rng.random() < 0.5:
        return random_rank1_presentation(cfg, rng, int(rng.integers(0, 2)), 1)
    resM, resN, ext = random_extension(cfg, rng)
    return t_extension_resolve(resM, resN, ext)


def torsion_eval_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("torsion-eval")
    for k in range(_counts(100, scale)):
        cfg = configs[k % len(configs)]
        T = _random_presentation(cfg, rng)
        P = T.prec
        tag = f"{cfg.describe()} presentation {k} rank {T.rank} n={T.n}"
        f = TorsionDualElem(T, tuple(random_selem(cfg, rng, P) for _ in range(T.rank)))
        v = tuple(random_selem(cfg, rng, P) for _ in range(T.rank))
        y = tuple(random_selem(cfg, rng, P) for _ in range(T.rank))
        shifted = tuple(a + b for a, b in zip(v, mat_vec(T.iota, y)))
        base = t_dual_eval(f, t_class(T, v))
        res.check(base == t_dual_eval(f, t_class(T, shifted)), f"{tag}: lift independence")
        if P >= T.n + 3:
            T1 = t_raise_exponent(T)
            f1 = TorsionDualElem(T1, f.functional)
            res.check(base == t_dual_eval(f1, t_class(T1, v)), f"{tag}: exponent independence")
        try:
            t_dual(T)
            res.check(True, "")
        except BreuilError as exc:
            res.check(False, f"{tag}: dual presentation certificate: {exc}")
        # p^n kills every value
        res.check((base * cfg.p**T.n).is_zero(), f"{tag}: values killed by p^n")
    return res


# -- 6/7. resolver and exactness -------------------------------------------


def _split_fixture(cfg):
    resM, resN = fixture("mult1-mod-p", cfg), fixture("et1-mod-p", cfg)
    return resM, resN, split_extension(resM, resN)


def resolver_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("resolver")
    cases = [("split", cfg, _split_fixture(cfg)) for cfg in configs]
    for k in range(_counts(20, scale)):
        cfg = configs[k % len(configs)]
        cases.append((f"random {k}", cfg, random_extension(cfg, rng)))
    for name, cfg, (resM, resN, ext) in cases:
        tag = f"{cfg.describe()} {name}"
        try:
            X = t_extension_resolve(resM, resN, ext)
        except BreuilError as exc:
            res.check(False, f"{tag}: resolver raised {type(exc).__name__}: {exc}")
            continue
        res.check(bool(sd_validate(X.cover)) and bool(sd_validate(X.subcover)),
                  f"{tag}: covers validate")
        rep = t_check_resolution(resM, resN, X)
        res.check(bool(rep), f"{tag}: {rep.axiom} {rep.detail}")
    return res


def exactness_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("exactness")
    for k in range(_counts(20, scale)):
        cfg = configs[k % len(configs)]
        resM, resN, ext = random_extension(cfg, rng)
        tag = f"{cfg.describe()} instance {k}"
        try:
            X = t_extension_resolve(resM, resN, ext)
            DX = t_dual(X)
            perm = list(range(resM.rank, X.rank)) + list(range(resM.rank))
            R = t_extension_resolve(t_dual(resN), t_dual(resM), dual_extension_data(resM, resN, ext, X))
            rep = t_same_quotient(R, t_reorder(DX, perm))
        except BreuilError as exc:
            res.check(False, f"{tag}: {type(exc).__name__}: {exc}")
            continue
        res.check(bool(rep), f"{tag}: {rep.axiom} {rep.detail}")
    return res


# -- 8. Cartier-type swap -------------------------------------------------------


def cartier_suite(rng, configs, scale=1.0) -> SuiteResult:
    res = SuiteResult("cartier")
    for cfg in configs:
        for name, build, want in (("mult1", mult1, (0,)), ("et1", et1, (1,))):
            M = build(cfg)
            D = sd_dual(M)
            res.check(D.types == want, f"{cfg.describe()} {name}: dual types {D.types}")
            DD = sd_dual(D)
            res.check(same_data(DD, M.reduce(DD.prec)), f"{cfg.describe()} {name}: double dual")
        for name, want in (("mult1-mod-p", (0,)), ("et1-mod-p", (1,))):
            T = fixture(name, cfg)
            res.check(t_dual(T).cover.types == want, f"{cfg.describe()} {name}: dual cover types")
            TT = t_dual(t_dual(T))
            res.check(same_data(TT.cover, T.cover.reduce(TT.prec)),
                      f"{cfg.describe()} {name}: double dual cover data")
    return res


# -- 9. text round trip ---------------------------------------------------------


def random_documents(cfg, rng, kind: str):
    from .textio import document

    if kind == "selem":
        return document(random_selem(cfg, rng, int(rng.integers(0, cfg.N + 1))), cfg)
    if kind == "okelem":
        return document(s_project_OK(random_selem(cfg, rng)), cfg)
    if kind == "sinfelem":
        m = int(rng.integers(0, cfg.N + 1))
        return document(SInfElem(cfg, m, random_selem(cfg, rng, m)), cfg)
    if kind == "vector":
        return document(tuple(random_selem(cfg, rng) for _ in range(int(rng.integers(1, 4)))), cfg)
    if kind == "sdiv":
        return document(random_sdiv(cfg, rng, int(rng.integers(1, 4))), cfg)
    if kind == "morphism":
        return document(random_isomorphism(random_sdiv(cfg, rng, int(rng.integers(1, 3))), rng), cfg)
    if kind == "torsion":
        return document(_random_presentation(cfg, rng), cfg)
    if kind == "extension":
        return document(random_extension(cfg, rng)[2], cfg)
    raise KeyError(kind)


DOCUMENT_KINDS = ("selem", "okelem", "sinfelem", "vector", "sdiv", "morphism", "torsion", "extension")


def io_suite(rng, configs, scale=1.0) -> SuiteResult:
    from .textio import dumps, loads

    res = SuiteResult("io")
    for kind in DOCUMENT_KINDS:
        for k in range(_counts(100, scale)):
            cfg = configs[k % len(configs)]
            doc = random_documents(cfg, rng, kind)
            tag = f"{kind} {k}"
            text = dumps(doc)
            back = loads(text)
            res.check(back == doc and dumps(back) == text, f"{tag}: text round trip")
            res.check(loads(dumps(doc, "json")) == doc, f"{tag}: json round trip")
    seed = int(rng.integers(0, 2**31))
    a = run_suite("ring", seed, configs, scale=0.05)
    b = run_suite("ring", seed, configs, scale=0.05)
    res.check([r.as_dict() for r in a] == [r.as_dict() for r in b], "suite determinism")
    return res


SUITES: dict[str, Callable] = {
    "ring": ring_suite,
    "phi1": phi1_suite,
    "dual": dual_suite,
    "involution": involution_suite,
    "torsion-eval": torsion_eval_suite,
    "resolver": resolver_suite,
    "exactness": exactness_suite,
    "cartier": cartier_suite,
    "io": io_suite,
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, seed: int = 0, configs=None, scale: float = 1.0) -> list[SuiteResult]:
    """Run one suite, or every suite for ``all``; each gets its own seeded stream."""
    configs = default_configs() if configs is None else list(configs)
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    out = []
    for i, n in enumerate(names):
        rng = np.random.default_rng([seed, i if name == "all" else list(SUITES).index(n)])
        out.append(SUITES[n](rng, configs, scale))
    return out


__all__ = ["SuiteResult", "SUITES", "default_configs", "run_suite", "suite_names",
           "random_documents", "DOCUMENT_KINDS"]
