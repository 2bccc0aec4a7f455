"""Line-oriented text formats for fans, morphisms and monomial data.

Every file starts with a versioned header line.  The remaining lines have
the form ``key = value`` or ``key name = value``; ``#`` starts a comment.
Vectors are bracketed integer lists and rationals are written ``p/q``.

Fan file::

    superfan 1
    rank = 2
    transcendentals = l1
    c l1 = [1, 0]
    cone o = []
    cone r = [[1, 0]]
    decoration r = [[1, 0]]

Decorations may be given for every cone or only for some; the others are
filled in by localization from a decorated cone containing them.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction

from .decorated_fan import DecoratedFan, Fan
from .lattice import CParam
from .polyhedral import Cone
from .supertorus import SupertorusDatum

FAN_HEADER = "superfan 1"
MORPHISM_HEADER = "superfan-morphism 1"
MONOMIAL_HEADER = "superfan-monomials 1"

_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.*-]*$")


class ParseError(ValueError):
    def __init__(self, message, line=None, path=None):
        self.message = message
        self.line = line
        self.path = path
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"line {line}:"
        super().__init__(f"{where} {message}" if where else message)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str, line=None) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise ParseError(f"malformed rational {text!r}", line)
    return Fraction(text)


def format_vector(v) -> str:
    return "[" + ", ".join(format_rational(x) for x in v) + "]"


def format_vectors(vs) -> str:
    return "[" + ", ".join(format_vector(v) for v in vs) + "]"


def parse_rational_vector(text: str, line=None) -> tuple:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"expected a bracketed vector, got {text!r}", line)
    body = text[1:-1].strip()
    if not body:
        return ()
    return tuple(parse_rational(t, line) for t in body.split(","))


def parse_int_vectors(text: str, line=None) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed vector list: {e.msg}", line) from None
    if not isinstance(data, list) or not all(
            isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
            for v in data):
        raise ParseError("expected a list of integer vectors", line)
    return [tuple(v) for v in data]


def _lines(text: str, header: str, path=None):
    rows = []
    seen_header = False
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != header:
                raise ParseError(f"expected header {header!r}", no, path)
            seen_header = True
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", no, path)
        lhs, rhs = line.split("=", 1)
        parts = lhs.split()
        if not parts or len(parts) > 2:
            raise ParseError(f"malformed key {lhs.strip()!r}", no, path)
        key = parts[0]
        name = parts[1] if len(parts) == 2 else None
        if name is not None and not _NAME.match(name):
            raise ParseError(f"malformed name {name!r}", no, path)
        rows.append((no, key, name, rhs.strip()))
    if not seen_header:
        raise ParseError(f"missing header {header!r}", None, path)
    return rows


def _parse_rank(value, no):
    if not re.match(r"^\d+$", value):
        raise ParseError(f"rank must be a nonnegative integer, got {value!r}", no)
    return int(value)


def _parse_c(rows, rank):
    symbols = None
    comps = {}
    for no, key, name, value in rows:
        if key == "transcendentals":
            symbols = value.split()
            for s in symbols:
                if not _NAME.match(s):
                    raise ParseError(f"malformed symbol {s!r}", no)
        elif key == "c":
            if name is None:
                raise ParseError("c needs a symbol: 'c <symbol> = [...]'", no)
            vec = parse_rational_vector(value, no)
            if len(vec) != rank:
                raise ParseError(f"c component has length {len(vec)}, expected {rank}", no)
            if name in comps:
                raise ParseError(f"duplicate c component {name!r}", no)
            if symbols is None or name not in symbols:
                raise ParseError(f"undeclared transcendental {name!r}", no)
            comps[name] = vec
    return CParam(rank, comps)


@dataclass
class FanDocument:
    torus: SupertorusDatum
    fan: Fan
    decorations: dict

    def decorated(self) -> DecoratedFan:
        if len(self.decorations) == len(self.fan.cones):
            return DecoratedFan(self.torus, self.fan, self.decorations)
        return DecoratedFan.from_maximal(self.torus, self.fan, self.decorations)


def parse_fan(text: str, path=None) -> FanDocument:
    try:
        rows = _lines(text, FAN_HEADER, path)
        rank = None
        for no, key, name, value in rows:
            if key == "rank":
                rank = _parse_rank(value, no)
        if rank is None:
            raise ParseError("missing 'rank = n'")
        c = _parse_c(rows, rank)
        names, cones, decs = [], [], {}
        for no, key, name, value in rows:
            if key in ("rank", "transcendentals", "c"):
                continue
            if key == "cone":
                if name is None:
                    raise ParseError("cone needs a name", no)
                if name in names:
                    raise ParseError(f"duplicate cone {name!r}", no)
                rays = parse_int_vectors(value, no)
                if any(len(r) != rank for r in rays):
                    raise ParseError("ray of wrong length", no)
                names.append(name)
                cones.append(Cone(rays, rank))
            elif key == "decoration":
                if name is None:
                    raise ParseError("decoration needs a cone name", no)
                if name in decs:
                    raise ParseError(f"duplicate decoration for {name!r}", no)
                vecs = parse_int_vectors(value, no)
                if not vecs:
                    raise ParseError(f"decoration of {name!r} is empty", no)
                if any(len(v) != rank for v in vecs):
                    raise ParseError("decoration vector of wrong length", no)
                decs[name] = vecs
            else:
                raise ParseError(f"unknown key {key!r}", no)
        for name in decs:
            if name not in names:
                raise ParseError(f"decoration for unknown cone {name!r}")
        fan = Fan(cones, rank, names)
        return FanDocument(SupertorusDatum(rank, c), fan, decs)
    except ParseError as e:
        if e.path is None and path is not None:
            raise ParseError(e.message, e.line, path) from None
        raise


def dump_fan(X, decorations=True) -> str:
    """Text of a decorated fan (or a plain :class:`Fan` with a torus)."""
    if isinstance(X, DecoratedFan):
        torus, fan, decs = X.torus, X.fan, X.decorations
    else:
        torus, fan = X
        decs = None
    out = [FAN_HEADER, f"rank = {torus.rank}"]
    if not torus.c.is_zero():
        out.append("transcendentals = " + " ".join(torus.c.symbols))
        for name, vec in torus.c.components:
            out.append(f"c {name} = {format_vector(vec)}")
    for name, cone in zip(fan.names, fan.cones):
        out.append(f"cone {name} = {format_vectors(cone.rays)}")
    if decs is not None and decorations:
        for name, dec in zip(fan.names, decs):
            out.append(f"decoration {name} = {format_vectors(dec)}")
    return "\n".join(out) + "\n"


def read_fan(path) -> FanDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_fan(fh.read(), path)


@dataclass
class MorphismDocument:
    src: str
    dst: str
    matrix: tuple
    a: Fraction


def parse_morphism(text: str, path=None) -> MorphismDocument:
    rows = _lines(text, MORPHISM_HEADER, path)
    vals = {}
    for no, key, name, value in rows:
        if key not in ("src", "dst", "matrix", "a") or name is not None:
            raise ParseError(f"unknown key {key!r}", no, path)
        if key in vals:
            raise ParseError(f"duplicate key {key!r}", no, path)
        if key == "matrix":
            vals[key] = tuple(parse_int_vectors(value, no))
        elif key == "a":
            vals[key] = parse_rational(value, no)
        else:
            vals[key] = value
    for k in ("src", "dst", "matrix", "a"):
        if k not in vals:
            raise ParseError(f"missing key {k!r}", None, path)
    base = os.path.dirname(os.path.abspath(path)) if path else ""
    resolve = lambda p: p if os.path.isabs(p) or not base else os.path.join(base, p)
    return MorphismDocument(resolve(vals["src"]), resolve(vals["dst"]), vals["matrix"], vals["a"])


def dump_morphism(src_path: str, dst_path: str, matrix, a) -> str:
    return "\n".join([
        MORPHISM_HEADER,
        f"src = {src_path}",
        f"dst = {dst_path}",
        f"matrix = {format_vectors(matrix)}",
        f"a = {format_rational(a)}",
    ]) + "\n"


def read_morphism(path) -> MorphismDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_morphism(fh.read(), path)


@dataclass
class MonomialDocument:
    rank: int
    c: CParam
    A: list
    B: list


def parse_monomials(text: str, path=None) -> MonomialDocument:
    rows = _lines(text, MONOMIAL_HEADER, path)
    rank = None
    A = B = None
    try:
        for no, key, name, value in rows:
            if key == "rank":
                rank = _parse_rank(value, no)
        if rank is None:
            raise ParseError("missing 'rank = n'")
        c = _parse_c(rows, rank)
        for no, key, name, value in rows:
            if key in ("rank", "transcendentals", "c"):
                continue
            if key == "A":
                A = parse_int_vectors(value, no)
            elif key == "B":
                B = parse_int_vectors(value, no)
            else:
                raise ParseError(f"unknown key {key!r}", no)
            if any(len(v) != rank for v in (A if key == "A" else B)):
                raise ParseError("vector of wrong length", no)
        if A is None:
            raise ParseError("missing 'A = [...]'")
    except ParseError as e:
        if e.path is None and path is not None:
            raise ParseError(e.message, e.line, path) from None
        raise
    return MonomialDocument(rank, c, A, B)


def read_monomials(path) -> MonomialDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_monomials(fh.read(), path)
