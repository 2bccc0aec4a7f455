"""Saturated affine semigroups ``S = dual(sigma) ∩ M`` and their monomial ideals.

Elements are integer tuples.  An ideal is stored by its minimal generators,
each reduced modulo the unit lattice ``sigma^perp ∩ M`` so that equal ideals
have equal generator tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from . import lattice as lt
from .lattice import CParam
from .polyhedral import Cone


class NotInSemigroup(ValueError):
    pass


class FinitenessInconclusive(RuntimeError):
    """The multiple needed to reach the ideal exceeds ``k_max``."""

    def __init__(self, k_max, needed=None):
        self.k_max = k_max
        self.needed = needed
        super().__init__(f"finiteness inconclusive at k_max={k_max}"
                         + (f" (needs k={needed})" if needed else ""))


class InfiniteComplement(ValueError):
    pass


DEFAULT_K_MAX = 64


class AffineSemigroup:
    """Lattice points of the dual of a strongly convex cone."""

    def __init__(self, sigma: Cone):
        if not sigma.is_strongly_convex():
            raise ValueError("the cone must be strongly convex")
        self.sigma = sigma
        self.rank = sigma.ambient_rank

    def __eq__(self, other):
        return isinstance(other, AffineSemigroup) and self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    def __repr__(self):
        return f"AffineSemigroup({self.sigma!r})"

    @property
    def units(self) -> tuple:
        """HNF basis of the group of invertible elements."""
        return self.sigma.orthogonal

    def contains(self, m) -> bool:
        if len(m) != self.rank:
            raise lt.LatticeError("rank mismatch")
        return all(lt.dot(m, r) >= 0 for r in self.sigma.rays)

    def degree(self, m) -> int:
        """Pairing with the sum of the rays; zero exactly on units."""
        return lt.dot(m, self.sigma.interior_vector())

    def canonical(self, m) -> tuple:
        """Representative of ``m`` modulo units, unique per coset."""
        m = tuple(m)
        for row in self.units:
            p = next(j for j, x in enumerate(row) if x)
            q = m[p] // row[p]
            if q:
                m = tuple(a - q * b for a, b in zip(m, row))
        return m

    def divides(self, a, b) -> bool:
        """Whether ``a <=_S b``, i.e. ``b - a`` lies in ``S``."""
        for x in (a, b):
            if not self.contains(x):
                raise NotInSemigroup(f"{tuple(x)} is not in the semigroup")
        return self.contains(lt.vsub(b, a))

    @cached_property
    def hilbert_basis(self) -> tuple:
        """Minimal generators: pointed part first (sorted), then ``±`` units."""
        n = self.rank
        units = self.units
        unit_gens = []
        for u in units:
            unit_gens += [tuple(u), tuple(-x for x in u)]
        if len(units) == n:
            return tuple(unit_gens)
        # N_sigma = lattice points of span(sigma) = units^perp
        span_basis = lt.kernel_saturated(units, n) if units else lt.identity(n)
        d = len(span_basis)
        cols = lt.transpose(span_basis)
        ray_coords = []
        for r in self.sigma.rays:
            y = lt.solve_integer(cols, r, d)
            ray_coords.append(y)
        quotient_dual = Cone.from_inequalities(ray_coords, d)
        reduced = pointed_hilbert_basis(quotient_dual.rays, ray_coords, d)
        lifted = set()
        for h in reduced:
            m = lt.solve_integer(span_basis, h, n)
            lifted.add(self.canonical(m))
        return tuple(sorted(lifted)) + tuple(unit_gens)


def pointed_hilbert_basis(rays, inequalities, d: int) -> list:
    """Hilbert basis of a full-dimensional pointed cone in ``Z^d``.

    ``rays`` are its extreme rays and ``inequalities`` its facet normals.
    Every lattice point lies in a simplicial cone spanned by ``d`` independent
    rays, and hence is a sum of rays plus a point of that cone's half-open
    parallelepiped, so those points together with the rays generate.
    Reducible candidates are then discarded.
    """
    rays = [tuple(r) for r in rays]
    candidates = set(rays)
    for subset in combinations(rays, d):
        if lt.rank(list(subset), d) < d:
            continue
        candidates.update(_parallelepiped_points(subset, d))
    candidates.discard(lt.zero(d))
    # a reducible x is divisible by a basis element of strictly smaller
    # degree, so scanning by degree only compares against accepted elements
    pairings = {x: tuple(lt.dot(a, x) for a in inequalities) for x in candidates}
    order = sorted(candidates, key=lambda x: (sum(pairings[x]), x))
    out = []
    for x in order:
        px = pairings[x]
        if not any(all(p >= q for p, q in zip(px, pairings[h])) for h in out):
            out.append(x)
    return sorted(out)


def _parallelepiped_points(gens, d):
    """Lattice points of ``sum [0,1) * g`` over linearly independent ``gens``."""
    h = lt.hnf(gens, d)
    diag = [h[i][i] for i in range(d)]
    cols = lt.transpose(gens)
    det = abs(int(lt.determinant(cols)))
    # det * inverse is integral, so the coefficients are tracked times det
    scaled = [[int(x * det) for x in row] for row in lt.inverse(cols)]
    pts = []

    def rec(prefix):
        if len(prefix) == d:
            lam = [sum(a * x for a, x in zip(row, prefix)) % det for row in scaled]
            pts.append(tuple(sum(cols[i][j] * lam[j] for j in range(d)) // det
                             for i in range(d)))
            return
        for x in range(diag[len(prefix)]):
            rec(prefix + [x])

    rec([])
    return pts


@dataclass(frozen=True)
class SIdeal:
    """Monomial ideal of a semigroup, stored by minimal canonical generators."""

    semigroup: AffineSemigroup
    gens: tuple

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(self.semigroup.canonical(g) == lt.zero(self.semigroup.rank) for g in self.gens)

    def contains(self, m) -> bool:
        return any(self.semigroup.contains(lt.vsub(m, g)) for g in self.gens)

    def __contains__(self, m):
        return self.contains(m)

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)


def minimalize(gens, S: AffineSemigroup) -> SIdeal:
    """Minimal unit-canonical generating set of the ideal generated by ``gens``."""
    reps = set()
    for g in gens:
        if not S.contains(g):
            raise NotInSemigroup(f"{tuple(g)} is not in the semigroup")
        reps.add(S.canonical(g))
    reps = sorted(reps)
    # g - h lies in S exactly when g pairs at least as much as h with every ray
    pairings = {g: [lt.dot(g, r) for r in S.sigma.rays] for g in reps}

    def above(g, h):
        return all(x >= y for x, y in zip(pairings[g], pairings[h]))

    keep = [g for g in reps if not any(h != g and above(g, h) for h in reps)]
    # mutually divisible elements differ by a unit and share a canonical form
    return SIdeal(S, tuple(keep))


def jc_generators(S: AffineSemigroup, c: CParam) -> SIdeal:
    """Ideal generated by the elements pairing nontrivially with ``c``."""
    return minimalize([h for h in S.hilbert_basis if not lt.pairs_to_zero(h, c)], S)


def ideal_contains_all(ideal_gens, targets, S) -> bool:
    return all(any(S.contains(lt.vsub(t, b)) for b in ideal_gens) for t in targets)


def is_minimal(B, S: AffineSemigroup) -> bool:
    B = [tuple(b) for b in B]
    for i, a in enumerate(B):
        for j, b in enumerate(B):
            if i != j and S.divides(a, b) and a != b:
                return False
    return len(set(B)) == len(B)


def is_admissible(B, S: AffineSemigroup, c: CParam, require_minimal: bool = False) -> bool:
    """Whether ``B`` generates an ideal containing ``J_c``.

    With ``require_minimal`` the generators must also form an antichain.
    """
    B = [tuple(b) for b in B]
    if not B:
        return False
    for b in B:
        if not S.contains(b):
            raise NotInSemigroup(f"{b} is not in the semigroup")
    ok = ideal_contains_all(B, jc_generators(S, c).gens, S)
    if require_minimal:
        ok = ok and is_minimal(B, S)
    return ok


def finiteness_witness(J: SIdeal, k_max: int = DEFAULT_K_MAX):
    """Least ``k`` with ``k*h`` in ``J`` for each Hilbert element ``h``.

    Returns ``None`` when some ``h`` has no multiple in ``J`` (the complement
    is then infinite).  Raises :class:`FinitenessInconclusive` when a needed
    multiple exceeds ``k_max``.
    """
    if J.is_zero():
        raise ValueError("the zero ideal has infinite complement")
    S = J.semigroup
    rays = S.sigma.rays
    witness = {}
    for h in S.hilbert_basis:
        hr = [lt.dot(h, r) for r in rays]
        best = None
        for g in J.gens:
            gr = [lt.dot(g, r) for r in rays]
            # k*h - g must pair nonnegatively with every ray
            if any(a == 0 and b > 0 for a, b in zip(hr, gr)):
                continue
            k = 1
            for a, b in zip(hr, gr):
                if a > 0:
                    k = max(k, -(-b // a))
            if best is None or k < best:
                best = k
        if best is None:
            return None
        witness[h] = best
    worst = max(witness.values(), default=1)
    if worst > k_max:
        raise FinitenessInconclusive(k_max, worst)
    return witness


def complement_is_finite(J: SIdeal, k_max: int = DEFAULT_K_MAX) -> bool:
    return finiteness_witness(J, k_max) is not None


def enumerate_complement(J: SIdeal, bound: int) -> list:
    """Points of ``S \\ J`` whose Hilbert coefficients sum to at most ``bound``."""
    S = J.semigroup
    zero = lt.zero(S.rank)
    # the complement is closed under division, so it is reached from zero
    # through complement points only
    level = [] if J.contains(zero) else [zero]
    seen = set(level)
    for _ in range(bound):
        nxt = []
        for p in level:
            for h in S.hilbert_basis:
                q = lt.vadd(p, h)
                if q not in seen:
                    seen.add(q)
                    if not J.contains(q):
                        nxt.append(q)
        level = nxt
    return sorted(p for p in seen if not J.contains(p))


def complement(J: SIdeal, k_max: int = DEFAULT_K_MAX) -> list:
    """The whole of ``S \\ J``; raises if it is infinite."""
    w = finiteness_witness(J, k_max)
    if w is None:
        raise InfiniteComplement("the complement of the ideal is infinite")
    return enumerate_complement(J, sum(k - 1 for k in w.values()))


def enumerate_intermediate_ideals(S: AffineSemigroup, c: CParam,
                                  k_max: int = DEFAULT_K_MAX) -> list:
    """All monomial ideals between ``J_c`` and ``S``.

    Each is determined by the part of the finite complement of ``J_c`` it
    leaves out, which is a down-set for divisibility.
    """
    jc = jc_generators(S, c)
    if jc.is_zero():
        raise InfiniteComplement("J_c is zero, so its complement is infinite")
    free = complement(jc, k_max)
    free.sort(key=lambda m: (S.degree(m), m))
    below = {m: [x for x in free if x != m and S.contains(lt.vsub(m, x))] for m in free}
    results = []

    def rec(i, down):
        if i == len(free):
            extra = [m for m in free if m not in down]
            extra = [m for m in extra if not any(x in extra and x != m for x in below[m])]
            results.append(minimalize(list(jc.gens) + extra, S))
            return
        m = free[i]
        rec(i + 1, down)
        if all(x in down for x in below[m]):
            rec(i + 1, down | {m})

    rec(0, frozenset())
    results.sort(key=lambda J: (len(J.gens), J.gens))
    return results
