import random
from itertools import combinations

import pytest

from superfan import lattice as lt
from superfan.polyhedral import Cone, cone, cut_vector, dual_cone, faces, intersect

from oracles import brute_facet_normals, random_cone_rays


def rays_of(c):
    return set(c.rays)


# -- dual cones ------------------------------------------------------------

def test_orthant_is_self_dual():
    assert dual_cone(cone((1, 0), (0, 1))) == cone((1, 0), (0, 1))


def test_dual_of_skew_cone_frozen():
    # normals found by brute force over a box, see oracles.brute_facet_normals
    sigma = cone((1, 0), (1, 2))
    assert brute_facet_normals(sigma.rays, 2) == {(0, 1), (2, -1)}
    assert dual_cone(sigma) == cone((0, 1), (2, -1))


def test_dual_of_zero_cone_is_everything():
    d = dual_cone(Cone.zero(2))
    assert d.rays == () and d.lineality == ((1, 0), (0, 1))
    for v in [(1, 0), (-1, 0), (0, 1), (0, -1)]:
        assert d.contains(v)


def test_dual_of_everything_is_zero():
    full = Cone([(1, 0), (-1, 0), (0, 1), (0, -1)], 2)
    assert dual_cone(full) == Cone.zero(2)


def test_non_primitive_generators_are_normalized():
    assert cone((2, 0), (3, 6)) == cone((1, 0), (1, 2))
    assert cone((1, 0), (1, 1), (0, 1)).rays == ((0, 1), (1, 0))


# -- faces -----------------------------------------------------------------

def test_faces_of_orthant():
    fs = faces(cone((1, 0), (0, 1)))
    assert [f.face.rays for f in fs] == [(), ((0, 1),), ((1, 0),), ((0, 1), (1, 0))]
    assert cut_vector(cone((1, 0), (0, 1)), cone((1, 0))) == (0, 1)
    assert cut_vector(cone((1, 0), (0, 1)), cone((1, 0), (0, 1))) == (0, 0)


def test_faces_of_a_ray_in_the_plane():
    sigma = cone((1, 1))
    fs = faces(sigma)
    assert [f.face for f in fs] == [Cone.zero(2), sigma]
    m = fs[0].cut_vector
    assert lt.dot(m, (1, 1)) > 0


def test_zero_cone_has_one_face():
    fs = faces(Cone.zero(3))
    assert len(fs) == 1 and fs[0].face == Cone.zero(3)


def test_faces_require_strong_convexity():
    with pytest.raises(ValueError):
        faces(cone((1, 0), (-1, 0)))


def test_cut_vector_rejects_non_face():
    with pytest.raises(ValueError):
        cut_vector(cone((1, 0), (0, 1)), cone((1, 1)))


# -- intersections and predicates -------------------------------------------

def test_intersections():
    orth = cone((1, 0), (0, 1))
    assert intersect(orth, orth) == orth
    assert intersect(orth, cone((0, 1), (-1, 0))) == cone((0, 1))
    assert intersect(cone((1, 0), (1, 2)), cone((0, 1), (2, 1))) == cone((1, 2), (2, 1))


def test_strong_convexity():
    assert cone((1, 0), (0, 1)).is_strongly_convex()
    assert not cone((1, 0), (-1, 0)).is_strongly_convex()
    assert not cone((1, 0), (-1, 1), (0, -1)).is_strongly_convex()


def test_smoothness():
    assert cone((1, 0), (0, 1)).is_smooth()
    assert not cone((1, 0), (1, 2)).is_smooth()
    assert cone((1, 1)).is_smooth()
    assert Cone.zero(2).is_smooth()


def test_containment():
    orth = cone((1, 0), (0, 1))
    assert orth.contains((1, 1))
    assert not orth.contains((-1, 0))
    assert cone((1, 0), (1, 2)).contains((1, 1))
    with pytest.raises(lt.LatticeError):
        orth.contains((1, 1, 1))


# -- properties on random cones ---------------------------------------------

def random_cones(count, seed, max_rank=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_rank)
        c = Cone(random_cone_rays(rng, n), n)
        out.append(c)
    return out


@pytest.mark.parametrize("sigma", random_cones(60, 11), ids=repr)
def test_biduality_and_invariants(sigma):
    assert dual_cone(dual_cone(sigma)) == sigma
    for r in sigma.rays:
        assert lt.content(r) == 1
        assert all(lt.dot(f, r) >= 0 for f in sigma.facets)
    if sigma.dim == sigma.ambient_rank and sigma.is_strongly_convex():
        assert set(sigma.facet_normals) == brute_facet_normals(sigma.rays, sigma.ambient_rank)


@pytest.mark.parametrize("sigma", [c for c in random_cones(80, 12) if c.is_strongly_convex()][:40],
                         ids=repr)
def test_face_lattice_and_cut_vectors(sigma):
    fs = faces(sigma)
    face_set = {f.face for f in fs}
    assert Cone.zero(sigma.ambient_rank) in face_set and sigma in face_set
    for f in fs:
        assert sigma.dual().contains(f.cut_vector)
        for r in sigma.rays:
            v = lt.dot(f.cut_vector, r)
            assert (v == 0) == (r in f.face.rays or f.face.contains(r))
            assert v >= 0
    for a, b in combinations(fs, 2):
        assert intersect(a.face, b.face) in face_set
    if sigma.dim == sigma.ambient_rank:
        # faces are the intersections of facets; compare ray subsets
        normals = brute_facet_normals(sigma.rays, sigma.ambient_rank)
        expect = {frozenset(sigma.rays)}
        frontier = list(expect)
        while frontier:
            cur = frontier.pop()
            for m in normals:
                sub = frozenset(r for r in cur if lt.dot(m, r) == 0)
                if sub not in expect:
                    expect.add(sub)
                    frontier.append(sub)
        assert {frozenset(f.face.rays) for f in fs} == expect


def test_intersection_laws():
    rng = random.Random(13)
    for _ in range(24):
        n = rng.randint(1, 3)
        a, b, c = (Cone(random_cone_rays(rng, n), n) for _ in range(3))
        assert intersect(a, b) == intersect(b, a)
        assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))
        assert intersect(a, a) == a
