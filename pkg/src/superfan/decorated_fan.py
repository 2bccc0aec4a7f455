"""Fans, decorated fans and their invariants.

A decorated fan carries a supertorus datum ``(N, c)``, a fan of strongly
convex cones and, for every cone, a finite set of characters generating the
fermionic ideal on that chart.  Checks return :class:`Report` objects that
list every problem found instead of stopping at the first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import lattice as lt
from .lattice import CParam, Subspace
from .polyhedral import Cone, faces
from .semigroup import (AffineSemigroup, SIdeal, DEFAULT_K_MAX, enumerate_complement, enumerate_intermediate_ideals,
                        finiteness_witness, is_admissible, is_minimal, jc_generators,
                        minimalize)
from .supertorus import SupertorusDatum


@dataclass(frozen=True)
class Problem:
    clause: str
    cones: tuple
    message: str

    def __str__(self):
        where = ", ".join(str(c) for c in self.cones)
        return f"[{self.clause}] {where}: {self.message}" if where else f"[{self.clause}] {self.message}"


@dataclass
class Report:
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok

    def add(self, clause, cones, message):
        self.problems.append(Problem(clause, tuple(cones), message))

    def extend(self, other: "Report"):
        self.problems.extend(other.problems)

    def clauses(self) -> set:
        return {p.clause for p in self.problems}


class Fan:
    """A finite list of cones in a common lattice, optionally named."""

    def __init__(self, cones, ambient_rank: int, names=None):
        self.cones = tuple(cones)
        self.ambient_rank = ambient_rank
        if names is None:
            names = [f"c{i}" for i in range(len(self.cones))]
        self.names = tuple(names)
        if len(self.names) != len(self.cones):
            raise ValueError("one name per cone is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("cone names must be distinct")
        for c in self.cones:
            if c.ambient_rank != ambient_rank:
                raise lt.LatticeError("cone in a different ambient rank")

    def __len__(self):
        return len(self.cones)

    def __eq__(self, other):
        return isinstance(other, Fan) and self.ambient_rank == other.ambient_rank \
            and sorted(self.cones) == sorted(other.cones)

    def __repr__(self):
        return f"Fan({list(self.cones)})"

    def index(self, ref) -> int:
        if isinstance(ref, int):
            if not 0 <= ref < len(self.cones):
                raise IndexError(ref)
            return ref
        if isinstance(ref, Cone):
            for i, c in enumerate(self.cones):
                if c == ref:
                    return i
            raise KeyError(f"{ref!r} is not a cone of the fan")
        if ref in self.names:
            return self.names.index(ref)
        raise KeyError(f"no cone named {ref!r}")

    @cached_property
    def face_table(self) -> tuple:
        """For each cone, the indices of the listed cones that are its faces."""
        table = []
        for c in self.cones:
            if not c.is_strongly_convex():
                table.append(())
                continue
            fs = {d.face for d in faces(c)}
            table.append(tuple(j for j, other in enumerate(self.cones) if other in fs))
        return tuple(table)

    def face_pairs(self):
        """``(sigma, tau)`` index pairs with ``tau`` a face of ``sigma``."""
        return [(i, j) for i, fs in enumerate(self.face_table) for j in fs]

    def maximal(self) -> list:
        return [i for i in range(len(self.cones))
                if not any(i in self.face_table[k] and k != i for k in range(len(self.cones)))]

    def star(self, i: int) -> list:
        """Cones having cone ``i`` as a face."""
        return [k for k in range(len(self.cones)) if i in self.face_table[k]]

    def minimal_cone_containing(self, target: Cone):
        best = None
        for i, c in enumerate(self.cones):
            if c.contains_cone(target) and (best is None or c.dim < self.cones[best].dim):
                best = i
        return best


def validate_fan(fan: Fan) -> Report:
    rep = Report()
    cones = fan.cones
    names = fan.names
    seen = {}
    for i, c in enumerate(cones):
        if c in seen:
            rep.add("duplicate", (names[seen[c]], names[i]), "cone listed twice")
        seen.setdefault(c, i)
    for i, c in enumerate(cones):
        if not c.is_strongly_convex():
            rep.add("strong convexity", (names[i],), "cone contains a line")
    for i, c in enumerate(cones):
        if not c.is_strongly_convex():
            continue
        for d in faces(c):
            if d.face not in seen:
                rep.add("face closure", (names[i],), f"face {list(d.face.rays)} is not listed")
    face_sets = {i: {d.face for d in faces(c)} for i, c in enumerate(cones)
                 if c.is_strongly_convex()}
    for i, j in itertools.combinations(face_sets, 2):
        a, b = cones[i], cones[j]
        if a in face_sets[j] or b in face_sets[i]:
            continue
        meet = a.intersect(b)
        if meet not in face_sets[i] or meet not in face_sets[j]:
            rep.add("intersection", (names[i], names[j]), "intersection is not a face of both")
    return rep


class DecoratedFan:
    """``(N, c, fan, decorations)`` with a decoration for every cone."""

    def __init__(self, torus: SupertorusDatum, fan: Fan, decorations):
        if fan.ambient_rank != torus.rank:
            raise lt.LatticeError("fan and torus have different ranks")
        if isinstance(decorations, dict):
            decorations = [decorations[k] for k in _keys_in_order(fan, decorations)]
        decorations = list(decorations)
        if len(decorations) != len(fan.cones):
            raise ValueError("one decoration per cone is required")
        clean = []
        for name, dec in zip(fan.names, decorations):
            dec = tuple(sorted(set(tuple(int(x) for x in b) for b in dec)))
            if not dec:
                raise ValueError(f"decoration of cone {name} is empty")
            if any(len(b) != torus.rank for b in dec):
                raise lt.LatticeError(f"decoration of cone {name} has wrong length")
            clean.append(dec)
        self.torus = torus
        self.fan = fan
        self.decorations = tuple(clean)

    @classmethod
    def from_maximal(cls, torus: SupertorusDatum, fan: Fan, maximal: dict) -> "DecoratedFan":
        """Fill in face decorations by localizing from a cone that has one.

        ``maximal`` maps cone references to decorations; cones not mentioned
        inherit from the first given cone of which they are a face.
        """
        given = {fan.index(k): v for k, v in maximal.items()}
        decs = []
        for j in range(len(fan.cones)):
            if j in given:
                decs.append(given[j])
                continue
            src = next((i for i in sorted(given) if j in fan.face_table[i]), None)
            if src is None:
                raise ValueError(f"cone {fan.names[j]} has no decoration to inherit")
            S_tau = AffineSemigroup(fan.cones[j])
            decs.append(minimalize(given[src], S_tau).gens)
        return cls(torus, fan, decs)

    @property
    def rank(self) -> int:
        return self.torus.rank

    @property
    def c(self) -> CParam:
        return self.torus.c

    @property
    def cones(self) -> tuple:
        return self.fan.cones

    def index(self, ref) -> int:
        return self.fan.index(ref)

    def decoration(self, ref) -> tuple:
        return self.decorations[self.index(ref)]

    @cached_property
    def _semigroups(self) -> tuple:
        return tuple(AffineSemigroup(c) if c.is_strongly_convex() else None
                     for c in self.fan.cones)

    def semigroup(self, ref) -> AffineSemigroup:
        return self._semigroups[self.index(ref)]

    def ideal(self, ref) -> SIdeal:
        return minimalize(self.decoration(ref), self.semigroup(ref))

    def canonical_decorations(self) -> dict:
        return {c: self.ideal(i).gens for i, c in enumerate(self.cones)}

    def _key(self):
        return (self.torus, tuple(sorted(self.canonical_decorations().items())))

    def __eq__(self, other):
        return isinstance(other, DecoratedFan) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        body = ", ".join(f"{list(c.rays)}: {list(d)}" for c, d in zip(self.cones, self.decorations))
        return f"DecoratedFan(rank={self.rank}, c={self.c.components}, {{{body}}})"

    def validate(self) -> Report:
        rep = validate_fan(self.fan)
        if rep.ok:
            rep.extend(validate_decorations(self))
        return rep


def _keys_in_order(fan, mapping):
    out = []
    for i in range(len(fan.cones)):
        for k in mapping:
            if fan.index(k) == i:
                out.append(k)
                break
        else:
            raise ValueError(f"cone {fan.names[i]} has no decoration")
    return out


def validate_decorations(X: DecoratedFan) -> Report:
    rep = Report()
    names = X.fan.names
    members_ok = []
    for i, dec in enumerate(X.decorations):
        S = X.semigroup(i)
        bad = [b for b in dec if not S.contains(b)]
        members_ok.append(not bad)
        if bad:
            rep.add("membership", (names[i],), f"{bad} not in the semigroup of the cone")
            continue
        if not is_admissible(dec, S, X.c):
            missing = [g for g in jc_generators(S, X.c).gens
                       if not any(S.contains(lt.vsub(g, b)) for b in dec)]
            rep.add("(i)", (names[i],), f"J_c generators {missing} not in the ideal")
        if not is_minimal(dec, S):
            rep.add("(iii)", (names[i],), "decoration is not minimal")
    for i, j in X.fan.face_pairs():
        if i == j or not (members_ok[i] and members_ok[j]):
            continue
        S_tau = X.semigroup(j)
        big, small = X.decorations[i], X.decorations[j]
        for b in big:
            if not any(S_tau.contains(lt.vsub(b, a)) for a in small):
                rep.add("(ii')", (names[i], names[j]), f"{b} is not in the face ideal")
        for a in small:
            if not any(S_tau.contains(lt.vsub(a, b)) for b in big):
                rep.add("(ii')", (names[i], names[j]), f"{a} is not in the localized ideal")
    return rep


def localize_decoration(X: DecoratedFan, sigma, tau) -> tuple:
    """Decoration induced on a face: minimal generators in the face semigroup."""
    i, j = X.index(sigma), X.index(tau)
    if j not in X.fan.face_table[i]:
        raise ValueError(f"cone {X.fan.names[j]} is not a face of {X.fan.names[i]}")
    return minimalize(X.decorations[i], X.semigroup(j)).gens


def is_split(X: DecoratedFan) -> bool:
    return all(len(d) == 1 for d in X.decorations)


def is_smooth(X: DecoratedFan) -> bool:
    return is_split(X) and all(c.is_smooth() for c in X.cones)


@dataclass(frozen=True)
class DSInvariant:
    semigroup_gens: tuple
    ideal_gens: tuple
    finite: bool
    basis: tuple | None

    @property
    def dimension(self):
        return None if self.basis is None else len(self.basis)


def ds_invariant(X: DecoratedFan, sigma, k_max: int = DEFAULT_K_MAX) -> DSInvariant:
    i = X.index(sigma)
    S = X.semigroup(i)
    J = X.ideal(i)
    w = finiteness_witness(J, k_max)
    if w is None:
        return DSInvariant(S.hilbert_basis, J.gens, False, None)
    basis = enumerate_complement(J, sum(k - 1 for k in w.values()))
    return DSInvariant(S.hilbert_basis, J.gens, True, tuple(basis))


def span_lattice(cone: Cone) -> tuple:
    """HNF basis of the lattice points in the span of a cone."""
    return lt.saturate(cone.rays, cone.ambient_rank) if cone.rays else ()


def fiber_of_J(X: DecoratedFan, sigma) -> tuple:
    """Characters of the fiber, in coordinates dual to the span lattice."""
    i = X.index(sigma)
    basis = span_lattice(X.cones[i])
    return tuple(sorted(set(tuple(lt.dot(b, m) for b in basis) for m in X.decorations[i])))


EVEN_STABILIZER = "even_stabilizer_super_orbit"
SUPER_STABILIZER = "super_stabilizer_even_orbit"


@dataclass(frozen=True)
class OrbitReport:
    """Stabilizer and orbit supertori at a point of the orbit of a cone.

    ``stabilizer_basis`` spans the sublattice of ``N`` whose torus is the
    stabilizer; ``projection`` maps ``N`` onto the lattice of the orbit.
    """

    stabilizer: SupertorusDatum
    orbit: SupertorusDatum
    branch: str
    stabilizer_basis: tuple
    projection: tuple


def _orbit_data(X: DecoratedFan, i: int):
    cone = X.cones[i]
    basis = span_lattice(cone)
    rank_q, proj = lt.quotient_lattice(X.rank, basis)
    return basis, rank_q, proj


def meets_units(X: DecoratedFan, i: int) -> bool:
    rays = X.cones[i].rays
    return any(all(lt.dot(b, r) == 0 for r in rays) for b in X.decorations[i])


def orbit_stabilizer(X: DecoratedFan, sigma) -> OrbitReport:
    i = X.index(sigma)
    basis, rank_q, proj = _orbit_data(X, i)
    if not meets_units(X, i):
        c_sub = X.c.coordinates(basis)
        if c_sub is None:
            raise AssertionError("c does not lie in the span of the cone; decorations are inconsistent")
        stab = SupertorusDatum(len(basis), c_sub)
        orbit = SupertorusDatum.even(rank_q)
        branch = SUPER_STABILIZER
    else:
        stab = SupertorusDatum.even(len(basis))
        orbit = SupertorusDatum(rank_q, X.c.mapped(proj, rank_q))
        branch = EVEN_STABILIZER
    return OrbitReport(stab, orbit, branch, basis, proj)


def orbit_closure(X: DecoratedFan, sigma):
    """Fan of the orbit closure, decorated when the orbit is a supertorus."""
    i = X.index(sigma)
    basis, rank_q, proj = _orbit_data(X, i)
    star = X.fan.star(i)
    cones, names = [], []
    for k in star:
        rays = [lt.matvec(proj, r) for r in X.cones[k].rays]
        cones.append(Cone(rays, rank_q))
        names.append(X.fan.names[k])
    fan = Fan(cones, rank_q, names)
    if not meets_units(X, i):
        return fan
    pt = lt.transpose(proj) if proj else tuple(() for _ in range(X.rank))
    decs = []
    for k, cone in zip(star, cones):
        rays = X.cones[i].rays
        kept = [b for b in X.decorations[k] if all(lt.dot(b, r) == 0 for r in rays)]
        if not kept:
            raise ValueError(f"decoration of {X.fan.names[k]} misses the orbit; inconsistent input")
        coords = [lt.solve_integer(pt, b, rank_q) for b in kept]
        decs.append(minimalize(coords, AffineSemigroup(cone)).gens)
    torus = SupertorusDatum(rank_q, X.c.mapped(proj, rank_q))
    return DecoratedFan(torus, fan, decs)


def admissible_c_space(fan: Fan, decorations) -> Subspace:
    """Rational subspace of parameters for which every decoration is admissible."""
    n = fan.ambient_rank
    constraints = []
    for cone, dec in zip(fan.cones, decorations):
        S = AffineSemigroup(cone)
        for h in S.hilbert_basis:
            if not any(S.contains(lt.vsub(h, b)) for b in dec):
                constraints.append(h)
    return Subspace.span(lt.nullspace(constraints, n), n)


def enumerate_decorations(fan: Fan, c: CParam, split_only: bool = False,
                          k_max: int = DEFAULT_K_MAX) -> list:
    """All valid decorated fans over ``fan`` with parameter ``c``.

    Decorations of maximal cones range over the ideals between ``J_c`` and
    the whole semigroup; faces are filled by localization and the result is
    kept only if it validates.  Needs every maximal ``J_c`` to have finite
    complement.
    """
    torus = SupertorusDatum(fan.ambient_rank, c)
    maxi = fan.maximal()
    choices = []
    for i in maxi:
        ideals = enumerate_intermediate_ideals(AffineSemigroup(fan.cones[i]), c, k_max)
        if split_only:
            ideals = [J for J in ideals if len(J.gens) == 1]
        choices.append([J.gens for J in ideals])
    out = []
    for combo in itertools.product(*choices):
        try:
            X = DecoratedFan.from_maximal(torus, fan, dict(zip(maxi, combo)))
        except ValueError:
            continue
        if X.validate().ok and (not split_only or is_split(X)):
            out.append(X)
    return out


def is_complete_rank_one(fan: Fan) -> bool:
    return fan.ambient_rank == 1 and {Cone([(1,)], 1), Cone([(-1,)], 1)} <= set(fan.cones)


def line_bundle_degree(X: DecoratedFan) -> int:
    """Degree of the fermionic sheaf on the projective line.

    With decorations ``{m}`` on the positive ray and ``{-n}`` on the negative
    one the sheaf is ``O(-m-n)``.
    """
    if not is_complete_rank_one(X.fan) or not is_split(X):
        raise ValueError("degree is defined for split decorations on the complete rank-one fan")
    (m,), = X.decoration(Cone([(1,)], 1))
    (neg,), = X.decoration(Cone([(-1,)], 1))
    return -(m - neg)
