"""Affine embeddings from monomial data and their binomial ideals.

Monomial data is a list ``A`` of even characters ``m_i`` and a list ``B`` of
odd characters ``n_j``.  The coordinate ring is generated by ``x_i = t^{m_i}``
and ``xi_j = t^{n_j} xi``.  Relations among these come from the lattice of
integer relations ``L`` of the map ``e_i -> (m_i|0)``, ``e'_j -> (n_j|1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import lattice as lt
from .lattice import CParam
from .semigroup import AffineSemigroup, is_admissible, minimalize


class NotAdmissible(ValueError):
    pass


DEFAULT_WITNESS_CAP = 32


def split_by_c(A, c: CParam):
    """Partition into characters pairing nontrivially with ``c`` and the rest."""
    A = [tuple(m) for m in A]
    pairing = [m for m in A if not lt.pairs_to_zero(m, c)]
    kernel = [m for m in A if lt.pairs_to_zero(m, c)]
    return pairing, kernel


def find_witness(target, gens, cap: int = DEFAULT_WITNESS_CAP, units=()):
    """Exponents ``p`` with ``sum p_i * gens_i == target``, smallest total first.

    ``units`` (each usable with either sign) may absorb a remainder that lies
    in their span; the returned exponents only cover ``gens``.
    """
    target = tuple(target)
    gens = [tuple(g) for g in gens]
    units = [tuple(u) for u in units]

    def absorbed(rest):
        if not any(rest):
            return True
        if not units:
            return False
        return lt.solve_integer(lt.transpose(units), rest, len(units)) is not None

    for total in range(cap + 1):
        for combo in itertools.combinations_with_replacement(range(len(gens)), total):
            v = target
            for i in combo:
                v = lt.vsub(v, gens[i])
            if absorbed(v):
                p = [0] * len(gens)
                for i in combo:
                    p[i] += 1
                return tuple(p)
    return None


@dataclass(frozen=True)
class MonomialData:
    """Even characters ``A``, odd characters ``B`` and the parameter ``c``.

    ``witnesses`` maps each odd character not in ``A`` to exponents over
    ``A`` expressing it.
    """

    A: tuple
    B: tuple
    c: CParam
    witnesses: tuple = ()

    @classmethod
    def build(cls, A, B, c: CParam, cap: int = DEFAULT_WITNESS_CAP) -> "MonomialData":
        A = tuple(tuple(int(x) for x in m) for m in A)
        B = tuple(tuple(int(x) for x in m) for m in B)
        if not B:
            raise ValueError("B must be nonempty")
        pairing, kernel = split_by_c(A, c)
        for m in pairing:
            if m not in B:
                raise ValueError(f"{m} pairs nontrivially with c but is missing from B")
        wit = []
        for b in B:
            if b in A:
                continue
            p = find_witness(b, kernel, cap)
            if p is None:
                raise ValueError(f"{b} is not a combination of the characters orthogonal to c")
            # exponents are indexed over the whole of A
            full = [0] * len(A)
            for m, k in zip(kernel, p):
                full[A.index(m)] += k
            wit.append((b, tuple(full)))
        return cls(A, B, c, tuple(wit))

    @property
    def rank(self) -> int:
        return self.c.rank

    def witness(self, b):
        for k, v in self.witnesses:
            if k == tuple(b):
                return v
        return None


def phi_lattice_map(data: MonomialData) -> tuple:
    """Integer matrix of ``Z^{r+s} -> M x Z`` with columns ``(m_i|0)``, ``(n_j|1)``."""
    cols = [m + (0,) for m in data.A] + [n + (1,) for n in data.B]
    return lt.transpose(cols)


def kernel_L(data: MonomialData) -> tuple:
    phi = phi_lattice_map(data)
    return lt.kernel_saturated(phi, len(data.A) + len(data.B))


@dataclass(frozen=True)
class SuperBinomial:
    """``x^plus xi_{odd_plus} - x^minus xi_{odd_minus}``.

    An odd index of ``None`` means that side has no odd factor.  The special
    marker (``is_odd_square``) stands for the relations ``xi_i xi_j``.
    """

    plus: tuple
    minus: tuple
    odd_plus: int | None = None
    odd_minus: int | None = None
    is_odd_square: bool = False

    def render(self) -> str:
        if self.is_odd_square:
            return "xi_i xi_j"
        return f"{_monomial(self.plus, self.odd_plus)} - {_monomial(self.minus, self.odd_minus)}"

    def __str__(self):
        return self.render()


ODD_SQUARE = SuperBinomial((), (), None, None, True)


def _monomial(exps, odd):
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    if odd is not None:
        parts.append(f"xi{odd + 1}")
    return " ".join(parts) if parts else "1"


def binomial_from_relation(v, r: int):
    """Binomial of a relation vector, or ``None`` if its odd part is too big."""
    even, odd = v[:r], v[r:]
    plus = tuple(max(x, 0) for x in even)
    minus = tuple(max(-x, 0) for x in even)
    nz = [(j, x) for j, x in enumerate(odd) if x]
    if not nz:
        op = om = None
    elif len(nz) == 2 and sorted(x for _, x in nz) == [-1, 1]:
        op = next(j for j, x in nz if x == 1)
        om = next(j for j, x in nz if x == -1)
    else:
        return None
    return SuperBinomial(plus, minus, op, om)


def _normalize(b: SuperBinomial) -> SuperBinomial:
    """Pick the sign so the lexicographically larger side comes first."""
    flipped = SuperBinomial(b.minus, b.plus, b.odd_minus, b.odd_plus)
    key = lambda x: (x.plus, -1 if x.odd_plus is None else x.odd_plus)
    return b if key(b) >= key(flipped) else flipped


def binomials_in_box(data: MonomialData, box_bound: int) -> list:
    """Binomials of relations with every coordinate in ``[-box, box]``.

    The odd-square marker is always appended last.
    """
    if box_bound < 1:
        raise ValueError("box bound must be at least 1")
    r = len(data.A)
    basis = kernel_L(data)
    found = set()
    if basis:
        piv = [next(j for j, x in enumerate(row) if x) for row in basis]
        # a relation is determined by its pivot coordinates; coefficients on
        # the HNF basis are recovered by back substitution
        ranges = [range(-box_bound, box_bound + 1)] * len(basis)
        for target in itertools.product(*ranges):
            coeffs = []
            ok = True
            for k, p in enumerate(piv):
                s = target[k] - sum(coeffs[i] * basis[i][p] for i in range(k))
                if s % basis[k][p]:
                    ok = False
                    break
                coeffs.append(s // basis[k][p])
            if not ok or not any(coeffs):
                continue
            v = [0] * len(basis[0])
            for cf, row in zip(coeffs, basis):
                v = [a + cf * b for a, b in zip(v, row)]
            if max(abs(x) for x in v) > box_bound:
                continue
            b = binomial_from_relation(v, r)
            if b is not None:
                found.add(_normalize(b))
    out = sorted(found, key=lambda b: (sum(b.plus) + sum(b.minus), b.render()))
    out.append(ODD_SQUARE)
    return out


def verify_vanishing(data: MonomialData, b: SuperBinomial) -> bool:
    """Whether both sides become the same monomial after substitution."""
    if b.is_odd_square:
        return True

    def image(exps, odd):
        total = lt.zero(data.rank)
        for e, m in zip(exps, data.A):
            total = lt.vadd(total, lt.vscale(e, m))
        if odd is not None:
            total = lt.vadd(total, data.B[odd])
        return total, (0 if odd is None else 1)

    if len(b.plus) != len(data.A) or len(b.minus) != len(data.A):
        return False
    return image(b.plus, b.odd_plus) == image(b.minus, b.odd_minus)


def presentation_from_semigroup(S: AffineSemigroup, decoration, c: CParam,
                                cap: int = DEFAULT_WITNESS_CAP) -> MonomialData:
    """Monomial data presenting the chart with semigroup ``S`` and ideal ``decoration``.

    ``A`` is the Hilbert basis; ``B`` holds the generators of ``A`` pairing
    nontrivially with ``c`` plus those decoration elements not already in
    their ideal.
    """
    decoration = [tuple(b) for b in decoration]
    if not is_admissible(decoration, S, c):
        raise NotAdmissible("decoration does not contain J_c")
    A = S.hilbert_basis
    pairing, kernel = split_by_c(A, c)
    extra = []
    for b in minimalize(decoration, S).gens:
        if any(S.contains(lt.vsub(b, a)) for a in pairing):
            continue
        extra.append(b)
    B = list(pairing)
    witnesses = []
    for b in extra:
        p = find_witness(b, kernel, cap)
        if p is None:
            raise ValueError(f"no decomposition of {b} within the cap")
        full = [0] * len(A)
        for m, k in zip(kernel, p):
            full[A.index(m)] += k
        B.append(b)
        witnesses.append((b, tuple(full)))
    return MonomialData(tuple(A), tuple(B), c, tuple(witnesses))
