"""Line-oriented text documents and their JSON mirror.

A document is a header line followed by ``kind = <name>`` and ``key = value``
lines, optionally grouped under ``[section]`` lines::

    breuil v1 p=2 e=1 E=[-2,1] N=5
    kind = sdiv
    prec = 5
    types = [1]
    A = [[S{0:1@5}]]

Ring elements print as ``S{i:c@m, ...}`` with ascending indices and the zero
element as ``S{}@m``.  O_K elements print as ``O[c0, ..., c_{e-1}]@m``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .errors import BreuilError, ParseError, SemanticError
from .padic import PadicConfig
from .ring import OKElem, SElem
from .sdiv import SDivModule, SDivMorphism
from .torsion import ExtensionData, SInfElem, TorsionPresentation

FORMAT_VERSION = 1

_MODULE_KEYS = ("prec", "types", "A")
_VALUE = ("value",)

SCHEMAS: dict[str, dict[str, tuple]] = {
    "selem": {"": _VALUE},
    "okelem": {"": _VALUE},
    "sinfelem": {"": ("denom", "numer")},
    "vector": {"": _VALUE},
    "sdiv": {"": _MODULE_KEYS},
    "morphism": {"source": _MODULE_KEYS, "target": _MODULE_KEYS, "matrix": _VALUE},
    "torsion": {"cover": _MODULE_KEYS, "subcover": _MODULE_KEYS, "iota": _VALUE,
                "n": _VALUE, "witness": _VALUE},
    "extension": {"phi": _VALUE, "kernel": _VALUE, "sub": _VALUE},
}
OPTIONAL_SECTIONS = {"extension": {"sub"}}

_HEADER = re.compile(r"^breuil v(\d+) p=(-?\d+) e=(\d+) E=\[([^\]]*)\] N=(-?\d+)$")
_FIELD = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_SECTION = re.compile(r"^\[([A-Za-z_]+)\]$")


@dataclass(frozen=True)
class Document:
    cfg: PadicConfig
    kind: str
    value: Any


# -- value grammar ------------------------------------------------------


class _Reader:
    """Recursive-descent reader for one field value."""

    def __init__(self, text: str, cfg: PadicConfig, line: int, offset: int):
        self.s = text
        self.i = 0
        self.cfg = cfg
        self.line = line
        self.offset = offset

    def error(self, msg: str, cls=ParseError):
        if cls is ParseError:
            return ParseError(msg, self.line, self.offset + self.i + 1)
        return cls(f"{msg} (line {self.line}, column {self.offset + self.i + 1})")

    def ws(self):
        while self.i < len(self.s) and self.s[self.i] in " \t":
            self.i += 1

    def peek(self, tok: str) -> bool:
        self.ws()
        return self.s.startswith(tok, self.i)

    def expect(self, tok: str):
        self.ws()
        if not self.s.startswith(tok, self.i):
            raise self.error(f"expected {tok!r}")
        self.i += len(tok)

    def integer(self) -> int:
        self.ws()
        m = re.compile(r"-?\d+").match(self.s, self.i)
        if not m:
            raise self.error("expected an integer")
        self.i = m.end()
        return int(m.group())

    def value(self):
        self.ws()
        if self.peek("S{"):
            return self.selem()
        if self.peek("O["):
            return self.okelem()
        if self.peek("["):
            return self.listing()
        return self.integer()

    def listing(self) -> list:
        self.expect("[")
        out = []
        if self.peek("]"):
            self.i += 1
            return out
        while True:
            out.append(self.value())
            if self.peek(","):
                self.i += 1
                continue
            self.expect("]")
            return out

    def _prec(self, prec: int) -> int:
        if not 0 <= prec <= self.cfg.N:
            raise self.error(f"precision {prec} outside [0, {self.cfg.N}]", SemanticError)
        return prec

    def selem(self) -> SElem:
        self.expect("S{")
        terms: dict[int, int] = {}
        precs = set()
        last = -1
        if not self.peek("}"):
            while True:
                self.ws()
                start = self.i
                idx = self.integer()
                if idx < 0:
                    self.i = start
                    raise self.error("negative basis index")
                if idx in terms:
                    self.i = start
                    raise self.error(f"duplicate basis index {idx}")
                if idx < last:
                    self.i = start
                    raise self.error("basis indices must ascend")
                last = idx
                self.expect(":")
                terms[idx] = self.integer()
                if self.peek("@"):
                    self.i += 1
                    precs.add(self.integer())
                if self.peek(","):
                    self.i += 1
                    continue
                break
        self.expect("}")
        if self.peek("@"):
            self.i += 1
            precs.add(self.integer())
        if len(precs) > 1:
            raise self.error("terms of one element carry different precisions", SemanticError)
        if not precs:
            raise self.error("element carries no precision tag")
        return SElem(self.cfg, terms, self._prec(precs.pop()))

    def okelem(self) -> OKElem:
        self.expect("O")
        coeffs = self.listing()
        if not all(isinstance(c, int) for c in coeffs):
            raise self.error("O_K coordinates must be integers")
        self.expect("@")
        prec = self._prec(self.integer())
        if len(coeffs) != self.cfg.e:
            raise self.error(f"expected {self.cfg.e} O_K coordinates", SemanticError)
        return OKElem(self.cfg, prec, coeffs)

    def finish(self):
        self.ws()
        if self.i != len(self.s):
            raise self.error("unexpected trailing characters")


def format_selem(x: SElem) -> str:
    if x.is_zero():
        return f"S{{}}@{x.prec}"
    return "S{" + ", ".join(f"{i}:{c}@{x.prec}" for i, c in x.coeffs.items()) + "}"


def format_okelem(o: OKElem) -> str:
    return f"O[{', '.join(map(str, o.coeffs))}]@{o.prec}"


def format_value(v) -> str:
    if isinstance(v, SElem):
        return format_selem(v)
    if isinstance(v, OKElem):
        return format_okelem(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"cannot format {type(v).__name__}")
    return str(v)


def parse_selem(text: str, cfg: PadicConfig) -> SElem:
    r = _Reader(text, cfg, 1, 0)
    x = r.selem()
    r.finish()
    return x


def parse_value(text: str, cfg: PadicConfig):
    r = _Reader(text, cfg, 1, 0)
    v = r.value()
    r.finish()
    return v


# -- header ---------------------------------------------------------------


def format_header(cfg: PadicConfig) -> str:
    return (f"breuil v{FORMAT_VERSION} p={cfg.p} e={cfg.e} "
            f"E=[{','.join(map(str, cfg.E))}] N={cfg.N}")


def parse_header(line: str) -> PadicConfig:
    m = _HEADER.match(line.strip())
    if not m:
        raise ParseError("malformed header; expected 'breuil v1 p=.. e=.. E=[..] N=..'", 1, 1)
    version, p, e, E, N = m.groups()
    if int(version) != FORMAT_VERSION:
        raise SemanticError(f"unsupported format version {version}")
    try:
        coeffs = tuple(int(c) for c in E.split(",")) if E.strip() else ()
    except ValueError:
        raise ParseError("E must be a comma-separated list of integers", 1, line.index("E=") + 3) from None
    return make_config(int(p), int(e), coeffs, int(N))


def make_config(p: int, e: int, E: tuple, N: int) -> PadicConfig:
    if len(E) != e + 1:
        raise SemanticError(f"E has {len(E)} coefficients, expected e + 1 = {e + 1}")
    return PadicConfig(p, e, tuple(E), N)


# -- values <-> fields ----------------------------------------------------


def _module_fields(M: SDivModule) -> dict:
    return {"prec": M.prec, "types": list(M.types), "A": M.A}


def to_sections(kind: str, value) -> dict[str, dict]:
    if kind in ("selem", "okelem", "vector"):
        return {"": {"value": value}}
    if kind == "sinfelem":
        return {"": {"denom": value.denom_exp, "numer": value.numer}}
    if kind == "sdiv":
        return {"": _module_fields(value)}
    if kind == "morphism":
        return {"": {}, "source": _module_fields(value.source),
                "target": _module_fields(value.target), "matrix": {"value": value.F}}
    if kind == "torsion":
        return {"": {}, "cover": _module_fields(value.cover),
                "subcover": _module_fields(value.subcover), "iota": {"value": value.iota},
                "n": {"value": value.n}, "witness": {"value": value.W}}
    if kind == "extension":
        from .linalg import from_columns

        out = {"": {}, "phi": {"value": from_columns(value.phi_images)},
               "kernel": {"value": from_columns(value.kernel_lifts)}}
        if value.sub_phi is not None:
            out["sub"] = {"value": from_columns(value.sub_phi)}
        return out
    raise SemanticError(f"unknown document kind {kind!r}")


def kind_of(value) -> str:
    if isinstance(value, SElem):
        return "selem"
    if isinstance(value, OKElem):
        return "okelem"
    if isinstance(value, SInfElem):
        return "sinfelem"
    if isinstance(value, SDivModule):
        return "sdiv"
    if isinstance(value, SDivMorphism):
        return "morphism"
    if isinstance(value, TorsionPresentation):
        return "torsion"
    if isinstance(value, ExtensionData):
        return "extension"
    if isinstance(value, (list, tuple)) and all(isinstance(x, SElem) for x in value):
        return "vector"
    raise TypeError(f"no document kind for {type(value).__name__}")


def _need(cond, msg):
    if not cond:
        raise SemanticError(msg)


def _is_selem_matrix(A) -> bool:
    return (isinstance(A, list) and A and all(isinstance(r, list) for r in A)
            and len({len(r) for r in A}) == 1
            and all(isinstance(x, SElem) for r in A for x in r))


def _matrix(v, what):
    _need(_is_selem_matrix(v), f"{what} must be a nonempty rectangular matrix of ring elements")
    return tuple(tuple(r) for r in v)


def _vector(v, what):
    _need(isinstance(v, list) and all(isinstance(x, SElem) for x in v),
          f"{what} must be a list of ring elements")
    return tuple(v)


def _module(cfg, f: dict, what: str) -> SDivModule:
    prec, types = f["prec"], f["types"]
    _need(isinstance(prec, int) and 0 <= prec <= cfg.N, f"{what}: prec must be in [0, N]")
    _need(isinstance(types, list) and all(isinstance(t, int) for t in types),
          f"{what}: types must be a list of integers")
    A = _matrix(f["A"], f"{what}: A")
    _need(len(A) == len(types) and len(A[0]) == len(types),
          f"{what}: A must be square of size {len(types)}")
    _need(all(x.prec >= prec for r in A for x in r),
          f"{what}: entries are known below the module precision {prec}")
    return SDivModule(cfg, tuple(types), A, prec)


def from_sections(cfg: PadicConfig, kind: str, sec: dict[str, dict]):
    top = sec.get("", {})
    if kind == "selem":
        _need(isinstance(top["value"], SElem), "value must be a ring element")
        return top["value"]
    if kind == "okelem":
        _need(isinstance(top["value"], OKElem), "value must be an O_K element")
        return top["value"]
    if kind == "vector":
        return _vector(top["value"], "value")
    if kind == "sinfelem":
        m, s = top["denom"], top["numer"]
        _need(isinstance(m, int) and m >= 0, "denom must be a nonnegative integer")
        _need(isinstance(s, SElem), "numer must be a ring element")
        _need(s.prec == m, "numer must carry precision denom")
        x = SInfElem(cfg, m, s)
        _need(x.denom_exp == m, "sinfelem is not normalized")
        return x
    if kind == "sdiv":
        return _module(cfg, top, "module")
    if kind == "morphism":
        src = _module(cfg, sec["source"], "source")
        tgt = _module(cfg, sec["target"], "target")
        F = _matrix(sec["matrix"]["value"], "matrix")
        _need(len(F) == tgt.rank and len(F[0]) == src.rank, "matrix shape does not match ranks")
        return SDivMorphism(src, tgt, F)
    if kind == "torsion":
        cover = _module(cfg, sec["cover"], "cover")
        sub = _module(cfg, sec["subcover"], "subcover")
        n = sec["n"]["value"]
        _need(isinstance(n, int) and n >= 0, "n must be a nonnegative integer")
        iota = _matrix(sec["iota"]["value"], "iota")
        W = _matrix(sec["witness"]["value"], "witness")
        d = cover.rank
        _need(sub.rank == d and len(iota) == d and len(iota[0]) == d
              and len(W) == d and len(W[0]) == d, "presentation shapes do not match")
        return TorsionPresentation(cover, sub, iota, n, W)
    if kind == "extension":
        from .linalg import column

        phi = _matrix(sec["phi"]["value"], "phi")
        K = _matrix(sec["kernel"]["value"], "kernel")
        cols = lambda A: tuple(column(A, j) for j in range(len(A[0])))  # noqa: E731
        sub = None
        if "sub" in sec:
            sub = cols(_matrix(sec["sub"]["value"], "sub"))
        return ExtensionData(cols(phi), cols(K), sub)
    raise SemanticError(f"unknown document kind {kind!r}")


# -- text ---------------------------------------------------------------


def dumps(doc: Document, fmt: str = "text") -> str:
    if fmt == "json":
        return dumps_json(doc)
    lines = [format_header(doc.cfg), f"kind = {doc.kind}"]
    for name, fields in to_sections(doc.kind, doc.value).items():
        if name:
            lines.append(f"[{name}]")
        for key, v in fields.items():
            lines.append(f"{key} = {format_value(v)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Document:
    if text.lstrip().startswith("{"):
        return loads_json(text)
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty document", 1, 1)
    cfg = parse_header(lines[0])
    kind = None
    section = ""
    sections: dict[str, dict] = {"": {}}
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(line) - len(line.lstrip())
        m = _SECTION.match(stripped)
        if m:
            if kind is None:
                raise ParseError("section before kind line", lineno, indent + 1)
            section = m.group(1)
            if section not in SCHEMAS[kind]:
                raise ParseError(f"unknown section [{section}] for kind {kind}", lineno, indent + 1)
            if section in sections:
                raise ParseError(f"duplicate section [{section}]", lineno, indent + 1)
            sections[section] = {}
            continue
        m = _FIELD.match(stripped)
        if not m:
            raise ParseError("expected 'key = value'", lineno, indent + 1)
        key, body = m.group(1), m.group(2)
        if kind is None:
            if key != "kind":
                raise ParseError("first field must be 'kind'", lineno, indent + 1)
            kind = body.strip()
            if kind not in SCHEMAS:
                raise ParseError(f"unknown document kind {kind!r}", lineno, indent + m.start(2) + 1)
            continue
        allowed = SCHEMAS[kind].get(section, ())
        if key not in allowed:
            raise ParseError(f"unknown field {key!r}", lineno, indent + 1)
        if key in sections[section]:
            raise ParseError(f"duplicate field {key!r}", lineno, indent + 1)
        reader = _Reader(body, cfg, lineno, indent + m.start(2))
        v = reader.value()
        reader.finish()
        sections[section][key] = v
    if kind is None:
        raise ParseError("missing kind line", len(lines), 1)
    _check_complete(kind, sections)
    try:
        value = from_sections(cfg, kind, sections)
    except BreuilError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise SemanticError(str(exc)) from None
    return Document(cfg, kind, value)


def _check_complete(kind: str, sections: dict):
    optional = OPTIONAL_SECTIONS.get(kind, set())
    for name, keys in SCHEMAS[kind].items():
        if name not in sections:
            if name in optional:
                continue
            raise SemanticError(f"missing section [{name}]")
        missing = [k for k in keys if k not in sections[name]]
        if missing:
            where = f"[{name}]" if name else "document"
            raise SemanticError(f"{where} is missing {', '.join(missing)}")


# -- JSON mirror ----------------------------------------------------------


def _to_json(v):
    if isinstance(v, SElem):
        return {"S": {str(i): c for i, c in v.coeffs.items()}, "prec": v.prec}
    if isinstance(v, OKElem):
        return {"O": list(v.coeffs), "prec": v.prec}
    if isinstance(v, (list, tuple)):
        return [_to_json(x) for x in v]
    return v


def _from_json(v, cfg):
    if isinstance(v, dict):
        if set(v) == {"S", "prec"}:
            terms = {}
            for k, c in v["S"].items():
                i = int(k)
                if i in terms:
                    raise ParseError(f"duplicate basis index {i}")
                terms[i] = int(c)
            if not 0 <= v["prec"] <= cfg.N:
                raise SemanticError(f"precision {v['prec']} outside [0, {cfg.N}]")
            return SElem(cfg, terms, v["prec"])
        if set(v) == {"O", "prec"}:
            if len(v["O"]) != cfg.e:
                raise SemanticError(f"expected {cfg.e} O_K coordinates")
            return OKElem(cfg, v["prec"], v["O"])
        raise ParseError(f"unknown value object with keys {sorted(v)}")
    if isinstance(v, list):
        return [_from_json(x, cfg) for x in v]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"unexpected JSON value {v!r}")
    return v


def dumps_json(doc: Document) -> str:
    cfg = doc.cfg
    out = {"format": "breuil", "version": FORMAT_VERSION, "p": cfg.p, "e": cfg.e,
           "E": list(cfg.E), "N": cfg.N, "kind": doc.kind}
    for name, fields in to_sections(doc.kind, doc.value).items():
        target = out if not name else out.setdefault(name, {})
        for k, v in fields.items():
            target[k] = _to_json(v)
    return json.dumps(out, indent=2) + "\n"


def loads_json(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or obj.get("format") != "breuil":
        raise ParseError("not a breuil JSON document", 1, 1)
    if obj.get("version") != FORMAT_VERSION:
        raise SemanticError(f"unsupported format version {obj.get('version')}")
    try:
        cfg = make_config(int(obj["p"]), int(obj["e"]), tuple(int(c) for c in obj["E"]), int(obj["N"]))
        kind = obj["kind"]
    except KeyError as exc:
        raise SemanticError(f"missing header field {exc}") from None
    if kind not in SCHEMAS:
        raise ParseError(f"unknown document kind {kind!r}")
    header = {"format", "version", "p", "e", "E", "N", "kind"}
    schema = SCHEMAS[kind]
    sections: dict[str, dict] = {"": {}}
    for key, v in obj.items():
        if key in header:
            continue
        if key in schema and key != "":
            if not isinstance(v, dict):
                raise ParseError(f"section {key!r} must be an object")
            unknown = set(v) - set(schema[key])
            if unknown:
                raise ParseError(f"unknown field(s) {sorted(unknown)} in section {key!r}")
            sections[key] = {k: _from_json(x, cfg) for k, x in v.items()}
        elif key in schema.get("", ()):
            sections[""][key] = _from_json(v, cfg)
        else:
            raise ParseError(f"unknown field {key!r}")
    _check_complete(kind, sections)
    return Document(cfg, kind, from_sections(cfg, kind, sections))


def read_document(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def document(value, cfg: PadicConfig | None = None) -> Document:
    """Wrap a library value, taking the ring from the value when possible."""
    if cfg is None:
        cfg = _cfg_of(value)
    return Document(cfg, kind_of(value), value)


def _cfg_of(value) -> PadicConfig:
    if isinstance(value, (list, tuple)):
        return value[0].cfg
    if isinstance(value, SDivMorphism):
        return value.source.cfg
    if isinstance(value, ExtensionData):
        return value.phi_images[0][0].cfg
    return value.cfg
