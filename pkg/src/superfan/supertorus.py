"""Supertorus data ``(N, c)`` and their morphisms ``(phi, a)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lattice as lt
from .lattice import CParam


class MorphismError(ValueError):
    """Base class for rejected morphism data."""


class DimensionMismatch(MorphismError):
    pass


class CEquationError(MorphismError):
    """The pushed-forward parameter is not ``a**2`` times the target one."""


class ChainMismatch(MorphismError):
    pass


@dataclass(frozen=True)
class SupertorusDatum:
    rank: int
    c: CParam

    def __post_init__(self):
        if self.c.rank != self.rank:
            raise lt.LatticeError(f"parameter has rank {self.c.rank}, lattice has rank {self.rank}")

    @classmethod
    def even(cls, rank: int) -> "SupertorusDatum":
        return cls(rank, CParam.zero(rank))

    def is_even(self) -> bool:
        return self.c.is_zero()


def check_shape(matrix, src_rank: int, dst_rank: int) -> tuple:
    matrix = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(matrix) != dst_rank or any(len(row) != src_rank for row in matrix):
        raise DimensionMismatch(f"matrix is not {dst_rank} x {src_rank}")
    return matrix


def c_equation_holds(src: SupertorusDatum, dst: SupertorusDatum, matrix, a) -> bool:
    a2 = Fraction(a) ** 2
    pushed = src.c.mapped(matrix, dst.rank)
    names = set(pushed.symbols) | set(dst.c.symbols)
    return all(pushed.vector(k) == tuple(a2 * x for x in dst.c.vector(k)) for k in names)


@dataclass(frozen=True)
class SupertorusMorphism:
    src: SupertorusDatum
    dst: SupertorusDatum
    phi_bar: tuple
    a: Fraction


def validate_supertorus_morphism(src, dst, phi_bar, a) -> SupertorusMorphism:
    matrix = check_shape(phi_bar, src.rank, dst.rank)
    a = Fraction(a)
    if not c_equation_holds(src, dst, matrix, a):
        raise CEquationError(f"phi(c) != a^2 c' for a = {a}")
    return SupertorusMorphism(src, dst, matrix, a)


def identity_morphism(T: SupertorusDatum) -> SupertorusMorphism:
    return SupertorusMorphism(T, T, lt.identity(T.rank), Fraction(1))


def compose(g: SupertorusMorphism, f: SupertorusMorphism) -> SupertorusMorphism:
    """``g ∘ f``."""
    if f.dst != g.src:
        raise ChainMismatch("target of the first map is not the source of the second")
    matrix = lt.matmul(g.phi_bar, f.phi_bar, f.src.rank)
    return validate_supertorus_morphism(f.src, g.dst, matrix, f.a * g.a)


def decompose(T: SupertorusDatum):
    """Unimodular ``g`` and ``r`` with ``g c`` supported on the first ``r`` rows.

    ``r`` is the rank of the ``n x k`` coordinate matrix of ``c``; the rows
    ``r..n-1`` of ``g c`` vanish for every symbol.
    """
    n = T.rank
    if T.c.is_zero():
        return lt.identity(n), 0
    # integer row vectors y with y . c = 0 for every component
    killers = lt.kernel_saturated([lt.primitive(v) for v in T.c.vectors], n)
    r = n - len(killers)
    if not killers:
        return lt.identity(n), r
    g_full = lt.complete_to_basis(killers, n)
    # rows: complement first, then the annihilating rows
    g = tuple(g_full[len(killers):]) + tuple(killers)
    return g, r


def transformed_parameter(T: SupertorusDatum, g) -> CParam:
    return T.c.mapped(g, T.rank)


def is_indecomposable(T: SupertorusDatum) -> bool:
    _, r = decompose(T)
    return T.rank > 0 and r == T.rank
