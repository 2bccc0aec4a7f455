"""Rational polyhedral cones.

A :class:`Cone` keeps a canonical V-description: an HNF basis of its
lineality space plus the primitive extreme rays of its pointed part, taken
inside the orthogonal complement of the lineality space.  The H-description
is the V-description of the dual cone and is computed on first use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import lattice as lt


def _int_rank(rows, n):
    return lt.rank(rows, n) if rows else 0


def double_description(inequalities, n: int):
    """Solve ``{u : <a, u> >= 0 for a in inequalities}``.

    Returns ``(lineality, rays)``: an HNF lattice basis of the lineality space
    and the sorted primitive extreme rays of the pointed part, the latter
    lying in the orthogonal complement of the lineality space.
    """
    ineqs = [tuple(lt.primitive(a)) for a in inequalities]
    ineqs = [a for a in ineqs if any(a)]
    if not ineqs:
        return lt.identity(n), ()
    lineality = lt.kernel_saturated(ineqs, n)
    # coordinates on the complement W of the lineality space
    w = lt.kernel_saturated(lineality, n) if lineality else lt.identity(n)
    d = len(w)
    if d == 0:
        return lineality, ()
    reduced = [tuple(lt.dot(a, wi) for wi in w) for a in ineqs]
    rays = _pointed_rays(reduced, d)
    lifted = []
    for y in rays:
        u = [0] * n
        for yi, wi in zip(y, w):
            if yi:
                u = [x + yi * z for x, z in zip(u, wi)]
        lifted.append(lt.primitive(u))
    return lineality, tuple(sorted(set(lifted)))


def _pointed_rays(ineqs, d):
    """Extreme rays of a pointed cone given by a full-column-rank system."""
    # start from a simplicial cone cut out by d independent inequalities
    chosen = []
    for i, a in enumerate(ineqs):
        if _int_rank([ineqs[j] for j in chosen] + [a], d) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break
    basis = [ineqs[i] for i in chosen]
    inv = lt.inverse(basis)
    # column j of inv satisfies basis[k] . col = delta_jk
    rays = []
    for j in range(d):
        col = lt.primitive([inv[i][j] for i in range(d)])
        zeros = frozenset(chosen[k] for k in range(d) if k != j)
        rays.append((col, zeros))
    processed = list(chosen)
    for i, a in enumerate(ineqs):
        if i in chosen:
            continue
        pos, neg, nul = [], [], []
        for r in rays:
            v = lt.dot(a, r[0])
            (pos if v > 0 else neg if v < 0 else nul).append((r, v))
        if not neg:
            rays = [(r[0], r[1] | {i}) if v == 0 else r for r, v in pos + nul]
            processed.append(i)
            continue
        new = []
        for (p, vp) in pos:
            for (q, vq) in neg:
                common = p[1] & q[1]
                if len(common) < d - 2:
                    continue
                if _int_rank([ineqs[k] for k in common], d) != d - 2:
                    continue
                vec = lt.primitive(lt.vsub(lt.vscale(vp, q[0]), lt.vscale(vq, p[0])))
                new.append((vec, common | {i}))
        rays = [r for r, _ in pos] + [(r[0], r[1] | {i}) for r, _ in nul] + new
        processed.append(i)
    return sorted(set(r[0] for r in rays))


class Cone:
    """A rational polyhedral cone in ``R^ambient_rank``.

    Build from generators with ``Cone(rays, n)`` or from inequalities with
    :meth:`from_inequalities`.  Equality compares the point sets.
    """

    __slots__ = ("ambient_rank", "lineality", "rays", "_dual")

    def __init__(self, generators=(), ambient_rank: int | None = None):
        generators = [tuple(int(x) for x in g) for g in generators]
        if ambient_rank is None:
            if not generators:
                raise ValueError("ambient rank needed for a cone without generators")
            ambient_rank = len(generators[0])
        for g in generators:
            if len(g) != ambient_rank:
                raise lt.LatticeError("generator of wrong length")
        n = ambient_rank
        generators = [g for g in generators if any(g)]
        dual_lin, dual_rays = double_description(generators, n)
        lin, rays = double_description(_generators(dual_lin, dual_rays), n)
        self._set(n, lin, rays)
        self._dual = (dual_lin, dual_rays)

    def _set(self, n, lin, rays):
        self.ambient_rank = n
        self.lineality = tuple(lin)
        self.rays = tuple(rays)

    @classmethod
    def from_inequalities(cls, inequalities, ambient_rank: int) -> "Cone":
        lin, rays = double_description(inequalities, ambient_rank)
        cone = cls.__new__(cls)
        cone._set(ambient_rank, lin, rays)
        cone._dual = None
        return cone

    @classmethod
    def zero(cls, n: int) -> "Cone":
        return cls((), n)

    # -- descriptions ------------------------------------------------------
    def generators(self) -> tuple:
        """Rays followed by both signs of each lineality basis vector."""
        return _generators(self.lineality, self.rays)

    def _dual_data(self):
        if self._dual is None:
            self._dual = double_description(self.generators(), self.ambient_rank)
        return self._dual

    @property
    def facets(self) -> tuple:
        """Generators of the dual cone; every one is a valid inequality."""
        lin, rays = self._dual_data()
        return _generators(lin, rays)

    @property
    def facet_normals(self) -> tuple:
        """Inner normals of the proper facets (within the span of the cone)."""
        return self._dual_data()[1]

    @property
    def orthogonal(self) -> tuple:
        """HNF basis of ``cone^perp`` intersected with the lattice."""
        return self._dual_data()[0]

    def dual(self) -> "Cone":
        lin, rays = self._dual_data()
        d = Cone.__new__(Cone)
        d._set(self.ambient_rank, lin, rays)
        d._dual = (self.lineality, self.rays)
        return d

    # -- predicates --------------------------------------------------------
    def contains(self, v) -> bool:
        if len(v) != self.ambient_rank:
            raise lt.LatticeError("rank mismatch")
        return all(lt.dot(f, v) >= 0 for f in self.facets)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators())

    def is_strongly_convex(self) -> bool:
        return not self.lineality

    @property
    def dim(self) -> int:
        return _int_rank(list(self.generators()), self.ambient_rank)

    def is_smooth(self) -> bool:
        """Rays form part of a lattice basis."""
        if not self.is_strongly_convex():
            raise ValueError("smoothness is defined for strongly convex cones")
        rays = list(self.rays)
        if not rays:
            return True
        if _int_rank(rays, self.ambient_rank) != len(rays):
            return False
        return all(e == 1 for e in lt.elementary_divisors(rays, self.ambient_rank))

    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient_rank != other.ambient_rank:
            raise lt.LatticeError("rank mismatch")
        return Cone.from_inequalities(self.facets + other.facets, self.ambient_rank)

    def is_face_of(self, other: "Cone") -> bool:
        return any(f.face == self for f in faces(other))

    def interior_vector(self) -> tuple:
        """A lattice point in the relative interior (sum of generators)."""
        v = lt.zero(self.ambient_rank)
        for g in self.rays:
            v = lt.vadd(v, g)
        return v

    # -- dunder ------------------------------------------------------------
    def _key(self):
        return (self.ambient_rank, self.lineality, self.rays)

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return (self.dim, self.rays, self.lineality) < (other.dim, other.rays, other.lineality)

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone({list(self.rays)}, {self.ambient_rank})"


def _generators(lineality, rays):
    out = list(rays)
    for v in lineality:
        out.append(tuple(v))
        out.append(tuple(-x for x in v))
    return tuple(out)


def cone(*rays, ambient_rank: int | None = None) -> Cone:
    return Cone(rays, ambient_rank)


def dual_cone(sigma: Cone) -> Cone:
    return sigma.dual()


def intersect(a: Cone, b: Cone) -> Cone:
    return a.intersect(b)


def is_strongly_convex(sigma: Cone) -> bool:
    return sigma.is_strongly_convex()


def is_smooth_cone(sigma: Cone) -> bool:
    return sigma.is_smooth()


def contains(sigma: Cone, v) -> bool:
    return sigma.contains(v)


@dataclass(frozen=True)
class FaceDescriptor:
    face: Cone
    cut_vector: tuple


def faces(sigma: Cone) -> list:
    """All faces of a strongly convex cone with a cut vector for each.

    The cut vector of a face is the sum of the facet normals vanishing on it,
    so it is zero on the face and positive on every other ray.  Faces come
    back sorted by dimension, then rays.
    """
    return list(_faces(sigma))


@lru_cache(maxsize=4096)
def _faces(sigma: Cone) -> tuple:
    if not sigma.is_strongly_convex():
        raise ValueError("faces are computed for strongly convex cones only")
    n = sigma.ambient_rank
    rays = sigma.rays
    normals = sigma.facet_normals
    full = frozenset(range(len(rays)))
    seen = {full}
    todo = [full]
    while todo:
        cur = todo.pop()
        for f in normals:
            sub = frozenset(i for i in cur if lt.dot(f, rays[i]) == 0)
            if sub != cur and sub not in seen:
                seen.add(sub)
                todo.append(sub)
    out = []
    for s in seen:
        # extreme rays of a face are the extreme rays of sigma it contains
        face = Cone.__new__(Cone)
        face._set(n, (), sorted(rays[i] for i in s))
        face._dual = None
        cut = lt.zero(n)
        for f in normals:
            if all(lt.dot(f, rays[i]) == 0 for i in s):
                cut = lt.vadd(cut, f)
        out.append(FaceDescriptor(face, cut))
    out.sort(key=lambda d: (d.face.dim, d.face.rays))
    return tuple(out)


def cut_vector(sigma: Cone, tau: Cone) -> tuple:
    for d in faces(sigma):
        if d.face == tau:
            return d.cut_vector
    raise ValueError(f"{tau!r} is not a face of {sigma!r}")
