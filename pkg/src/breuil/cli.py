"""Command-line front end: ``breuil <command> [options]``.

Exit status is 0 on success, 1 when a value fails validation and 2 for
parse or usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import errors
from .fixtures import fixture, fixture_names
from .linalg import mat_reduce
from .padic import PadicConfig
from .ring import SElem
from .sdiv import (
    SDivModule,
    SDivMorphism,
    sd_dual,
    sd_dual_morphism,
    sd_evaluate,
    sd_morphism_validate,
    sd_phi1_apply,
    sd_validate,
)
from .suites import run_suite, suite_names
from .textio import Document, document, dumps, loads, make_config
from .torsion import (
    TorsionDualElem,
    TorsionPresentation,
    t_class,
    t_dual,
    t_dual_eval,
    t_extension_resolve,
    t_make,
    t_phi1,
)

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2

USAGE_ERRORS = (errors.ParseError, errors.SemanticError, errors.ConfigMismatch)
DEFAULT_PRIME = 2
DEFAULT_PRECISION = 5


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------


def _read(path: str) -> Document:
    if not os.path.exists(path):
        head, name = os.path.split(path)
        if os.path.basename(head) == "fixtures":
            # built-in fallback so that fixtures/<name> works from any directory
            cfg = PadicConfig.standard(DEFAULT_PRIME, DEFAULT_PRECISION)
            return document(fixture(name, cfg), cfg)
        raise UsageError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _certify(T: TorsionPresentation) -> TorsionPresentation:
    return t_make(T.cover, T.subcover, T.iota, T.n, T.W)


def _reduce(value, prec: int | None):
    if prec is None:
        return value
    if isinstance(value, SElem):
        return value.reduce(prec)
    if isinstance(value, SDivModule):
        return value.reduce(prec)
    if isinstance(value, SDivMorphism):
        return SDivMorphism(value.source.reduce(prec), value.target.reduce(prec),
                            mat_reduce(value.F, prec))
    if isinstance(value, TorsionPresentation):
        return TorsionPresentation(value.cover.reduce(prec), value.subcover.reduce(prec),
                                   mat_reduce(value.iota, prec), value.n, mat_reduce(value.W, prec))
    if isinstance(value, tuple) and value and isinstance(value[0], SElem):
        return tuple(x.reduce(prec) for x in value)
    raise UsageError("--precision does not apply to this document kind")


def _expect(doc: Document, *kinds: str, what: str = "input") -> object:
    if doc.kind not in kinds:
        raise UsageError(f"{what} must be of kind {' or '.join(kinds)}, got {doc.kind}")
    return doc.value


def _emit(doc: Document, fmt: str):
    sys.stdout.write(dumps(doc, fmt))


def _config_from_flags(args) -> PadicConfig:
    p = args.prime or DEFAULT_PRIME
    N = args.precision or DEFAULT_PRECISION
    if args.eisenstein:
        try:
            E = tuple(int(c) for c in args.eisenstein.split(","))
        except ValueError:
            raise UsageError("--eisenstein takes comma-separated integers, constant term first") from None
        return make_config(p, len(E) - 1, E, N)
    return PadicConfig.standard(p, N)


# -- commands -------------------------------------------------------------


def cmd_check(args) -> int:
    doc = _read(args.file)
    value = _reduce(doc.value, args.precision)
    report = {"kind": doc.kind, "ok": True, "axiom": None, "detail": ""}

    def fail(axiom, detail=""):
        report.update(ok=False, axiom=axiom, detail=detail)

    if doc.kind == "sdiv":
        rep = sd_validate(value)
        if not rep:
            fail(rep.axiom, rep.detail)
    elif doc.kind == "morphism":
        for name, M in (("source", value.source), ("target", value.target)):
            rep = sd_validate(M)
            if not rep:
                fail(rep.axiom, f"{name}: {rep.detail}")
                break
        else:
            rep = sd_morphism_validate(value)
            if not rep:
                fail(rep.axiom, rep.detail)
    elif doc.kind == "torsion":
        try:
            _certify(value)
        except errors.CertificateFailure as exc:
            fail("presentation certificate", str(exc))
    if args.format == "json":
        print(json.dumps(report))
    elif report["ok"]:
        print(f"ok: {doc.kind}")
    else:
        print(f"violation: {report['axiom']}" + (f" ({report['detail']})" if report["detail"] else ""))
    return EXIT_OK if report["ok"] else EXIT_INVALID


def cmd_dual(args) -> int:
    doc = _read(args.file)
    value = _reduce(doc.value, args.precision)
    if doc.kind == "sdiv":
        out = sd_dual(value)
    elif doc.kind == "morphism":
        out = sd_dual_morphism(value)
    elif doc.kind == "torsion":
        out = t_dual(_certify(value))
    else:
        raise UsageError(f"dual is not defined for kind {doc.kind}")
    _emit(Document(doc.cfg, doc.kind, out), args.format)
    return EXIT_OK


def cmd_eval(args) -> int:
    mod = _read(args.module)
    f = _reduce(_expect(_read(args.functional), "vector", what="functional"), args.precision)
    x = _reduce(_expect(_read(args.element), "vector", what="element"), args.precision)
    if mod.kind == "torsion":
        T = _certify(_reduce(mod.value, args.precision))
        if len(f) != T.rank or len(x) != T.rank:
            raise UsageError("vector lengths do not match the presentation rank")
        out = t_dual_eval(TorsionDualElem(T, f), t_class(T, x))
    elif mod.kind == "sdiv":
        if len(f) != mod.value.rank or len(x) != mod.value.rank:
            raise UsageError("vector lengths do not match the module rank")
        out = sd_evaluate(f, x)
    else:
        raise UsageError("module must be of kind torsion or sdiv")
    _emit(document(out, mod.cfg), args.format)
    return EXIT_OK


def cmd_phi1(args) -> int:
    doc = _read(args.file)
    v = _reduce(_expect(_read(args.element), "vector", what="element"), args.precision)
    if doc.kind == "sdiv":
        out = sd_phi1_apply(_reduce(doc.value, args.precision), v)
    elif doc.kind == "torsion":
        T = _certify(_reduce(doc.value, args.precision))
        out = t_phi1(t_class(T, v, fil1=True)).lift
    else:
        raise UsageError("phi1 needs an sdiv or torsion document")
    _emit(document(tuple(out), doc.cfg), args.format)
    return EXIT_OK


def cmd_resolve(args) -> int:
    dm, dn = _read(args.resM), _read(args.resN)
    resM = _certify(_expect(dm, "torsion", what="resM"))
    resN = _certify(_expect(dn, "torsion", what="resN"))
    ext = _expect(_read(args.ext), "extension", what="ext")
    X = t_extension_resolve(resM, resN, ext)
    _emit(document(X, dm.cfg), args.format)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    cfg = _config_from_flags(args)
    if args.name == "list":
        print("\n".join(fixture_names()))
        return EXIT_OK
    try:
        value = fixture(args.name, cfg)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.reduce is not None:
        value = _reduce(value, args.reduce)
    _emit(document(value, cfg), args.format)
    return EXIT_OK


def cmd_suite(args) -> int:
    cfgs = None
    if args.prime or args.eisenstein or args.precision:
        cfgs = [_config_from_flags(args)]
    try:
        results = run_suite(args.name, args.seed, cfgs, scale=args.scale)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    ok = all(r.passed for r in results)
    if args.format == "json":
        print(json.dumps({"seed": args.seed, "passed": ok,
                          "suites": [r.as_dict() for r in results]}))
    else:
        for r in results:
            print(f"{r.name}: {'PASS' if r.passed else 'FAIL'} cases={r.cases}")
            for f in r.failures[:20]:
                print(f"  - {f}")
        print(f"overall: {'PASS' if ok else 'FAIL'} seed={args.seed}")
    return EXIT_OK if ok else EXIT_INVALID


# -- parser ---------------------------------------------------------------


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the options with suppressed defaults so that a flag
    # given before the subcommand is not overwritten
    def d(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=d(None),
                        help="working precision (ring cap N for built-in values, "
                             "truncation for documents read from files)")
    common.add_argument("--seed", type=int, default=d(0), help="seed for randomized suites")
    common.add_argument("--format", choices=("text", "json"), default=d("text"))
    common.add_argument("--prime", type=int, default=d(None), help="residue characteristic p")
    common.add_argument("--eisenstein", default=d(None),
                        help="coefficients of E(u), constant term first, e.g. --eisenstein=-3,0,1")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(prog="breuil", description=__doc__.splitlines()[0],
                                     parents=[_common(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="validate a document")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dual", parents=[common], help="print the dual of a module, morphism or presentation")
    p.add_argument("file")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("eval", parents=[common], help="evaluate a functional on an element")
    p.add_argument("module")
    p.add_argument("functional")
    p.add_argument("element")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("phi1", parents=[common], help="apply phi_1 to a Fil^1 vector")
    p.add_argument("file")
    p.add_argument("element")
    p.set_defaults(func=cmd_phi1)

    p = sub.add_parser("resolve", parents=[common], help="resolve an extension of presentations")
    p.add_argument("resM")
    p.add_argument("resN")
    p.add_argument("ext")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("fixtures", parents=[common], help="print a built-in fixture ('list' for names)")
    p.add_argument("name")
    p.add_argument("--reduce", type=int, default=None, help="print the value at this lower precision")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("suite", parents=[common], help="run a named invariant suite")
    p.add_argument("name", help=", ".join(suite_names()))
    p.add_argument("--scale", type=float, default=1.0, help="multiply case counts")
    p.set_defaults(func=cmd_suite)
    return parser


def _diagnose(exc: BaseException, fmt: str):
    kind = type(exc).__name__
    payload = {"error": kind, "message": str(exc)}
    for attr in ("line", "column"):
        if getattr(exc, attr, None) is not None:
            payload[attr] = getattr(exc, attr)
    if fmt == "json":
        print(json.dumps(payload), file=sys.stderr)
    else:
        print(f"error: {kind}: {exc}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OSError, *USAGE_ERRORS) as exc:
        _diagnose(exc, args.format)
        return EXIT_USAGE
    except errors.BreuilError as exc:
        _diagnose(exc, args.format)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
