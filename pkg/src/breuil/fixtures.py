"""Built-in rank-1 modules and their p^n quotients."""
from __future__ import annotations

import re

from .padic import PadicConfig
from .ring import s_one
from .sdiv import SDivModule
from .torsion import TorsionPresentation, t_quotient_by_power

BASE_NAMES = {"mult1": 1, "et1": 0}
_QUOTIENT = re.compile(r"^(mult1|et1)-mod-p(?:\^(\d+|n))?$")


def rank1(cfg: PadicConfig, t: int, prec: int | None = None) -> SDivModule:
    prec = cfg.N if prec is None else prec
    return SDivModule(cfg, (t,), ((s_one(cfg, prec),),), prec)


def mult1(cfg: PadicConfig, prec: int | None = None) -> SDivModule:
    """Type (1), A = (1): phi_1(E e) = e."""
    return rank1(cfg, 1, prec)


def et1(cfg: PadicConfig, prec: int | None = None) -> SDivModule:
    """Type (0), A = (1): phi_1(e) = e."""
    return rank1(cfg, 0, prec)


def fixture(name: str, cfg: PadicConfig, prec: int | None = None) -> SDivModule | TorsionPresentation:
    """Look up ``mult1``, ``et1`` or ``<base>-mod-p^k`` (``p^n`` and bare ``p`` mean k = 1)."""
    if name in BASE_NAMES:
        return rank1(cfg, BASE_NAMES[name], prec)
    m = _QUOTIENT.match(name)
    if not m:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
    base, k = m.group(1), m.group(2)
    n = 1 if k in (None, "n") else int(k)
    return t_quotient_by_power(rank1(cfg, BASE_NAMES[base], prec), n)


def fixture_names() -> list[str]:
    return ["mult1", "et1", "mult1-mod-p^n", "et1-mod-p^n"]
