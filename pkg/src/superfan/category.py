"""Morphisms of decorated fans and fiber products."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lattice as lt
from .decorated_fan import DecoratedFan, Fan
from .polyhedral import Cone
from .semigroup import AffineSemigroup, jc_generators, minimalize
from .supertorus import (CEquationError, ChainMismatch, MorphismError,
                         SupertorusDatum, c_equation_holds, check_shape)


class FanCompatibilityError(MorphismError):
    """Some cone is not mapped into any cone of the target fan."""


class DecorationCompatibilityError(MorphismError):
    """A pulled-back target decoration is not divisible by a source one."""


class FiberProductUnsupported(ValueError):
    """Both scalars vanish; the fiber product need not exist."""


@dataclass(frozen=True)
class DecoratedFanMorphism:
    src: DecoratedFan
    dst: DecoratedFan
    phi_bar: tuple
    a: Fraction

    def __eq__(self, other):
        return isinstance(other, DecoratedFanMorphism) and (self.src, self.dst, self.phi_bar, self.a) \
            == (other.src, other.dst, other.phi_bar, other.a)

    def __hash__(self):
        return hash((self.phi_bar, self.a))


def image_cone(matrix, cone: Cone, target_rank: int) -> Cone:
    return Cone([lt.matvec(matrix, r) for r in cone.rays], target_rank)


def _pullback_n(matrix, m, src_rank):
    if not matrix:
        return lt.zero(src_rank)
    return tuple(sum(matrix[i][j] * m[i] for i in range(len(matrix))) for j in range(src_rank))


def target_cones(src: DecoratedFan, dst: DecoratedFan, matrix):
    """Minimal target cone index for every source cone (``None`` if absent)."""
    out = []
    for cone in src.cones:
        out.append(dst.fan.minimal_cone_containing(image_cone(matrix, cone, dst.rank)))
    return out


def validate_morphism(src: DecoratedFan, dst: DecoratedFan, phi_bar, a) -> DecoratedFanMorphism:
    matrix = check_shape(phi_bar, src.rank, dst.rank)
    a = Fraction(a)
    if not c_equation_holds(src.torus, dst.torus, matrix, a):
        raise CEquationError(f"phi(c) != a^2 c' for a = {a}")
    targets = target_cones(src, dst, matrix)
    for i, t in enumerate(targets):
        if t is None:
            raise FanCompatibilityError(f"cone {src.fan.names[i]} maps into no target cone")
    if a != 0:
        for i, t in enumerate(targets):
            S = src.semigroup(i)
            for b2 in dst.decorations[t]:
                pulled = _pullback_n(matrix, b2, src.rank)
                if not any(S.contains(lt.vsub(pulled, b)) for b in src.decorations[i]):
                    raise DecorationCompatibilityError(
                        f"pullback {pulled} of {b2} is not divisible on cone {src.fan.names[i]}")
    return DecoratedFanMorphism(src, dst, matrix, a)


def identity(X: DecoratedFan) -> DecoratedFanMorphism:
    return DecoratedFanMorphism(X, X, lt.identity(X.rank), Fraction(1))


def compose(g: DecoratedFanMorphism, f: DecoratedFanMorphism) -> DecoratedFanMorphism:
    """``g ∘ f``, revalidated."""
    if f.dst != g.src:
        raise ChainMismatch("target of the first map is not the source of the second")
    matrix = lt.matmul(g.phi_bar, f.phi_bar, f.src.rank) if g.phi_bar else ()
    return validate_morphism(f.src, g.dst, matrix, f.a * g.a)


def is_isomorphism(f: DecoratedFanMorphism) -> bool:
    if f.a == 0 or f.src.rank != f.dst.rank or not lt.is_unimodular(f.phi_bar):
        return False
    inv = tuple(tuple(int(x) for x in row) for row in lt.inverse(f.phi_bar)) if f.phi_bar else ()
    try:
        validate_morphism(f.dst, f.src, inv, 1 / f.a)
    except MorphismError:
        return False
    # a bijection on cones is also needed; the inverse check covers inclusion one way
    return all(image_cone(f.phi_bar, c, f.dst.rank) in f.dst.cones for c in f.src.cones) \
        and len(f.src.cones) == len(f.dst.cones)


def affine_extension_check(torus_map, S: AffineSemigroup, J, S2: AffineSemigroup, J2) -> bool:
    """Whether a supertorus map extends to affine charts ``(S, J) -> (S2, J2)``.

    ``torus_map`` is a pair ``(matrix, a)`` or any object with ``phi_bar`` and
    ``a``.  The semigroup condition is tested on Hilbert generators.
    """
    if hasattr(torus_map, "phi_bar"):
        matrix, a = torus_map.phi_bar, torus_map.a
    else:
        matrix, a = torus_map
    n = S.rank
    for h in S2.hilbert_basis:
        if not S.contains(_pullback_n(matrix, h, n)):
            return False
    if Fraction(a) == 0:
        return True
    J, J2 = list(J), list(J2)
    return all(any(S.contains(lt.vsub(_pullback_n(matrix, g, n), b)) for b in J) for g in J2)


@dataclass(frozen=True)
class FiberProduct:
    obj: DecoratedFan
    proj1: DecoratedFanMorphism
    proj2: DecoratedFanMorphism
    block1: tuple
    block2: tuple


def fiber_product(f1: DecoratedFanMorphism, f2: DecoratedFanMorphism) -> FiberProduct:
    """Fiber product of two morphisms with a common target.

    The lattice is ``{(n1, n2) : phi1 n1 = phi2 n2}``, cones are the pairs of
    cones mapping into a common target cone, and the decoration of each cone
    is generated by ``J_c`` together with the pullbacks of the factor
    decorations; a factor's decoration is used when the opposite scalar is
    nonzero, since the projection onto that factor carries that scalar.
    """
    if f1.dst != f2.dst:
        raise ChainMismatch("the two morphisms have different targets")
    if f1.a == 0 and f2.a == 0:
        raise FiberProductUnsupported("both scalars are zero; the fiber product may not exist")
    X1, X2, Y = f1.src, f2.src, f1.dst
    n1, n2 = X1.rank, X2.rank
    stacked = [tuple(r1) + tuple(-x for x in r2)
               for r1, r2 in zip(f1.phi_bar, f2.phi_bar)]
    K = lt.kernel_saturated(stacked, n1 + n2) if stacked else lt.identity(n1 + n2)
    n = len(K)
    # psi_k: N -> N_k, columns are the kernel basis vectors restricted
    psi1 = tuple(tuple(K[j][i] for j in range(n)) for i in range(n1))
    psi2 = tuple(tuple(K[j][n1 + i] for j in range(n)) for i in range(n2))
    c_big = X1.c.scaled(f2.a ** 2).concat(X2.c.scaled(f1.a ** 2))
    c = c_big.coordinates(K)
    if c is None:
        raise AssertionError("fiber-product parameter is not in the fiber lattice")
    torus = SupertorusDatum(n, c)

    t1 = target_cones(X1, Y, f1.phi_bar)
    t2 = target_cones(X2, Y, f2.phi_bar)
    cones, origin = [], []
    seen = set()
    for i, s1 in enumerate(X1.cones):
        for j, s2 in enumerate(X2.cones):
            if not _share_target(Y, t1[i], t2[j]):
                continue
            ineqs = [_pullback_n(psi1, f, n) for f in s1.facets] + \
                    [_pullback_n(psi2, f, n) for f in s2.facets]
            cone = Cone.from_inequalities(ineqs, n)
            if cone in seen:
                continue
            seen.add(cone)
            cones.append(cone)
            origin.append((i, j))
    fan = Fan(cones, n, [f"{X1.fan.names[i]}*{X2.fan.names[j]}" for i, j in origin])

    decs = []
    for cone in cones:
        S = AffineSemigroup(cone)
        i = X1.fan.minimal_cone_containing(image_cone(psi1, cone, n1))
        j = X2.fan.minimal_cone_containing(image_cone(psi2, cone, n2))
        gens = list(jc_generators(S, c).gens)
        if f2.a != 0:
            gens += [_pullback_n(psi1, b, n) for b in X1.decorations[i]]
        if f1.a != 0:
            gens += [_pullback_n(psi2, b, n) for b in X2.decorations[j]]
        decs.append(minimalize(gens, S).gens)
    X = DecoratedFan(torus, fan, decs)
    p1 = validate_morphism(X, X1, psi1, f2.a)
    p2 = validate_morphism(X, X2, psi2, f1.a)
    return FiberProduct(X, p1, p2, psi1, psi2)


def _share_target(Y: DecoratedFan, a, b) -> bool:
    ca, cb = Y.cones[a], Y.cones[b]
    return any(lam.contains_cone(ca) and lam.contains_cone(cb) for lam in Y.cones)


def character_map(fp: FiberProduct) -> tuple:
    """Matrix of ``M1 x M2 -> M``, the transpose of ``N -> N1 x N2``."""
    rows = list(fp.block1) + list(fp.block2)
    return lt.transpose(rows)


def mediating_morphism(fp: FiberProduct, g1: DecoratedFanMorphism,
                       g2: DecoratedFanMorphism) -> DecoratedFanMorphism:
    """The map into the fiber product induced by a commuting pair."""
    Z = g1.src
    if g2.src != Z:
        raise ChainMismatch("the two maps have different sources")
    a1, a2 = fp.proj1.a, fp.proj2.a
    X = fp.obj
    block = [tuple(r) for r in fp.block1] + [tuple(r) for r in fp.block2]
    cols = []
    for k in range(Z.rank):
        target = tuple(row[k] for row in g1.phi_bar) + tuple(row[k] for row in g2.phi_bar)
        x = lt.solve_integer(block, target, X.rank)
        if x is None:
            raise MorphismError("the pair does not factor through the fiber lattice")
        cols.append(x)
    matrix = lt.transpose(cols) if cols else tuple(() for _ in range(X.rank))
    if a1 != 0:
        a = g1.a / a1
    else:
        a = g2.a / a2
    return validate_morphism(Z, X, matrix, a)
