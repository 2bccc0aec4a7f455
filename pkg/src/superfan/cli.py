"""Command line interface: ``superfan validate|report|ideal|fiber-product|enumerate``.

Exit codes: 0 success, 1 validation failure, 2 parse or usage error,
3 unsupported fiber product.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import lattice as lt
from .category import (FiberProductUnsupported, fiber_product, validate_morphism)
from .decorated_fan import (DecoratedFan, ds_invariant, enumerate_decorations,
                            is_complete_rank_one, is_smooth, is_split, line_bundle_degree,
                            orbit_closure, orbit_stabilizer, validate_fan, admissible_c_space)
from .embedding import MonomialData, binomials_in_box, verify_vanishing
from .fileio import (ParseError, dump_fan, dump_morphism, format_rational,
                     format_vectors, read_fan, read_monomials, read_morphism)
from .semigroup import DEFAULT_K_MAX, FinitenessInconclusive, InfiniteComplement
from .supertorus import MorphismError

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_UNSUPPORTED = 0, 1, 2, 3
DEFAULT_BOX = 4


def default_box() -> int:
    value = os.environ.get("SUPERFAN_BOX")
    if value is None:
        return DEFAULT_BOX
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"SUPERFAN_BOX must be an integer, got {value!r}") from None


# -- rendering --------------------------------------------------------------

def render_lattice(basis, ambient: int) -> str:
    """Conventional name of a sublattice: ``Z×0``, ``Z^2``, ``0`` or a span."""
    basis = [tuple(b) for b in basis]
    coords = set()
    for b in basis:
        nz = [i for i, x in enumerate(b) if x]
        if len(nz) != 1 or b[nz[0]] != 1:
            return "<" + ", ".join("(" + ",".join(str(x) for x in b) + ")" for b in basis) + ">"
        coords.add(nz[0])
    parts = ["Z" if i in coords else "0" for i in range(ambient)]
    if ambient == 0:
        return "0"
    if len(set(parts)) == 1 and ambient > 1:
        return f"{parts[0]}^{ambient}"
    return "×".join(parts)


def render_param(c) -> str:
    if c.is_zero():
        return ""

    def vec(v):
        if len(v) == 1:
            return format_rational(v[0])
        return "(" + ",".join(format_rational(x) for x in v) + ")"

    if len(c.components) == 1:
        return vec(c.vectors[0])
    return "+".join(f"{name}*{vec(v)}" for name, v in c.components)


def render_torus(lattice_name: str, c) -> str:
    p = render_param(c)
    return f"T_{{{lattice_name},{p}}}" if p else f"T_{{{lattice_name}}}"


def render_bool(b) -> str:
    return "true" if b else "false"


# -- commands ---------------------------------------------------------------

def _load(path) -> DecoratedFan:
    doc = read_fan(path)
    return doc.decorated()


def cmd_validate(args, out) -> int:
    X = _load(args.path)
    rep = X.validate()
    if rep.ok:
        print("valid", file=out)
        return EXIT_OK
    print("invalid", file=out)
    for p in rep.problems:
        print(str(p), file=out)
    return EXIT_INVALID


def cmd_report(args, out) -> int:
    X = _load(args.path)
    rep = X.validate()
    if not rep.ok:
        print("invalid", file=out)
        for p in rep.problems:
            print(str(p), file=out)
        return EXIT_INVALID
    lines = {}
    if args.split:
        lines["split"] = render_bool(is_split(X))
    if args.smooth:
        lines["smooth"] = render_bool(is_smooth(X))
    if args.ds is not None:
        try:
            ds = ds_invariant(X, args.ds, args.k_max)
            lines["ds.finite"] = render_bool(ds.finite)
            lines["ds.ideal"] = format_vectors(ds.ideal_gens)
            lines["ds.semigroup"] = format_vectors(ds.semigroup_gens)
            if ds.finite:
                lines["ds.basis"] = format_vectors(ds.basis)
                lines["ds.dimension"] = str(ds.dimension)
        except FinitenessInconclusive as e:
            lines["ds.finite"] = f"unknown ({e})"
    if args.orbit is not None:
        r = orbit_stabilizer(X, args.orbit)
        lines["orbit.branch"] = r.branch
        lines["stab"] = render_torus(render_lattice(r.stabilizer_basis, X.rank), r.stabilizer.c)
        lines["orbit"] = render_torus(render_lattice(lt.identity(r.orbit.rank), r.orbit.rank),
                                      r.orbit.c)
    if args.closure is not None:
        cl = orbit_closure(X, args.closure)
        if isinstance(cl, DecoratedFan):
            lines["closure.kind"] = "decorated"
            lines["closure.c"] = render_param(cl.c) or "0"
            for name, cone, dec in zip(cl.fan.names, cl.cones, cl.decorations):
                lines[f"closure.cone.{name}"] = f"{format_vectors(cone.rays)} decoration {format_vectors(dec)}"
        else:
            lines["closure.kind"] = "even"
            for name, cone in zip(cl.names, cl.cones):
                lines[f"closure.cone.{name}"] = format_vectors(cone.rays)
        lines["closure.rank"] = str(cl.rank if isinstance(cl, DecoratedFan) else cl.ambient_rank)
    if args.cspace:
        space = admissible_c_space(X.fan, X.decorations)
        lines["cspace"] = format_vectors(space.basis)
        lines["cspace.dim"] = str(space.dim)
    if args.degree:
        if is_complete_rank_one(X.fan) and is_split(X):
            lines["degree"] = f"O({line_bundle_degree(X)})"
        else:
            lines["degree"] = "not applicable"
    for key in sorted(lines):
        print(f"{key} = {lines[key]}", file=out)
    return EXIT_OK


def cmd_ideal(args, out) -> int:
    box = args.box if args.box is not None else default_box()
    if box < 1:
        raise ParseError("box bound must be at least 1")
    doc = read_monomials(args.path)
    B = doc.B if doc.B is not None else doc.A
    try:
        data = MonomialData.build(doc.A, B, doc.c)
    except ValueError as e:
        print(f"invalid monomial data: {e}", file=out)
        return EXIT_INVALID
    for b in binomials_in_box(data, box):
        if not verify_vanishing(data, b):
            raise RuntimeError(f"internal error: {b.render()} does not vanish")
        print(b.render(), file=out)
    return EXIT_OK


def _load_morphism(path):
    doc = read_morphism(path)
    src = _load(doc.src)
    dst = _load(doc.dst)
    return doc, validate_morphism(src, dst, doc.matrix, doc.a)


def cmd_fiber_product(args, out) -> int:
    try:
        d1, f1 = _load_morphism(args.first)
        d2, f2 = _load_morphism(args.second)
    except MorphismError as e:
        print(f"invalid morphism: {e}", file=out)
        return EXIT_INVALID
    try:
        fp = fiber_product(f1, f2)
    except FiberProductUnsupported as e:
        print(f"unsupported: {e}", file=out)
        return EXIT_UNSUPPORTED
    except MorphismError as e:
        print(f"invalid: {e}", file=out)
        return EXIT_INVALID
    path = args.out
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_fan(fp.obj))
    stem = path[:-4] if path.endswith(".fan") else path
    written = [path]
    for k, (proj, doc) in enumerate([(fp.proj1, d1), (fp.proj2, d2)], 1):
        mpath = f"{stem}.proj{k}.morphism"
        with open(mpath, "w", encoding="utf-8") as fh:
            fh.write(dump_morphism(os.path.abspath(path), os.path.abspath(doc.src),
                                   proj.phi_bar, proj.a))
        written.append(mpath)
    print(f"rank = {fp.obj.rank}", file=out)
    print(f"c = {render_param(fp.obj.c) or '0'}", file=out)
    for name, dec in zip(fp.obj.fan.names, fp.obj.decorations):
        print(f"decoration {name} = {format_vectors(dec)}", file=out)
    for w in written:
        print(f"wrote {w}", file=out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    doc = read_fan(args.path)
    rep = validate_fan(doc.fan)
    if not rep.ok:
        print("invalid", file=out)
        for p in rep.problems:
            print(str(p), file=out)
        return EXIT_INVALID
    try:
        found = enumerate_decorations(doc.fan, doc.torus.c, args.split, args.k_max)
    except (InfiniteComplement, FinitenessInconclusive) as e:
        print(f"not enumerable: {e}", file=out)
        return EXIT_INVALID
    print(f"count = {len(found)}", file=out)
    maxi = doc.fan.maximal()
    for k, X in enumerate(found, 1):
        parts = [f"{X.fan.names[i]}={format_vectors(X.decorations[i])}" for i in maxi]
        line = f"{k}: " + " ".join(parts)
        if is_complete_rank_one(X.fan) and is_split(X):
            line += f" degree=O({line_bundle_degree(X)})"
        print(line, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superfan", description="Decorated fans and toric supervarieties.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check fan axioms and decorations")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("report", help="print invariants of a decorated fan")
    r.add_argument("path")
    r.add_argument("--split", action="store_true")
    r.add_argument("--smooth", action="store_true")
    r.add_argument("--ds", metavar="CONE")
    r.add_argument("--orbit", metavar="CONE")
    r.add_argument("--closure", metavar="CONE")
    r.add_argument("--cspace", action="store_true")
    r.add_argument("--degree", action="store_true")
    r.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    r.set_defaults(func=cmd_report)

    i = sub.add_parser("ideal", help="list binomials of an affine embedding")
    i.add_argument("path")
    i.add_argument("--box", type=int, default=None,
                   help=f"coordinate bound (default: $SUPERFAN_BOX or {DEFAULT_BOX})")
    i.set_defaults(func=cmd_ideal)

    f = sub.add_parser("fiber-product", help="fiber product of two morphism files")
    f.add_argument("first")
    f.add_argument("second")
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_fiber_product)

    e = sub.add_parser("enumerate", help="all valid decorations of a fan")
    e.add_argument("path")
    e.add_argument("--split", action="store_true")
    e.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (KeyError, IndexError) as e:
        print(f"error: unknown cone {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, lt.LatticeError) as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
