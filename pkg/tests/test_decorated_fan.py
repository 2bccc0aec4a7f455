import pytest

from superfan import lattice as lt
from superfan.decorated_fan import (EVEN_STABILIZER, SUPER_STABILIZER, DecoratedFan, Fan,
                                    admissible_c_space, ds_invariant, enumerate_decorations,
                                    fiber_of_J, is_complete_rank_one, is_smooth, is_split,
                                    line_bundle_degree, localize_decoration, orbit_closure,
                                    orbit_stabilizer, validate_decorations, validate_fan)
from superfan.lattice import CParam, Subspace
from superfan.polyhedral import Cone, cone
from superfan.semigroup import enumerate_complement
from superfan.supertorus import SupertorusDatum

from fans import (affine_fan, line_fan, projective_line, projective_space_decorations,
                  projective_space_fan, torus, x_family)

ORTHANT = cone((1, 0), (0, 1))
R1, R2 = cone((1, 0)), cone((0, 1))
ORIGIN = Cone.zero(2)


# -- fan axioms ----------------------------------------------------------------

def test_fan_validation():
    assert validate_fan(line_fan()).ok
    assert validate_fan(projective_space_fan(2)).ok
    assert validate_fan(projective_space_fan(3)).ok
    rep = validate_fan(Fan([ORTHANT], 2))
    assert not rep.ok and "face closure" in rep.clauses()


def test_overlapping_cones_are_rejected():
    a, b = cone((1, 0), (1, 1)), cone((1, 0), (0, 1))
    cones = {d for s in (a, b) for d in affine_fan(s).cones}
    rep = validate_fan(Fan(sorted(cones), 2))
    assert "intersection" in rep.clauses()


def test_non_convex_cone_is_rejected():
    rep = validate_fan(Fan([Cone.zero(1), cone((1,), (-1,))], 1))
    assert not rep.ok


def test_fan_lookup_by_name_and_cone():
    fan = line_fan()
    assert fan.index("pos") == fan.index(cone((1,))) == 1
    assert fan.maximal() == [1, 2]
    assert fan.star(0) == [0, 1, 2]


# -- decorations -------------------------------------------------------------------

def test_projective_line_decorations():
    assert projective_line(1, 1).validate().ok
    bad = projective_line(2, 1)
    rep = bad.validate()
    assert not rep.ok
    assert any(p.clause == "(i)" and p.cones == ("pos",) for p in rep.problems)


def test_even_parameter_makes_condition_one_vacuous():
    assert projective_line(3, 5, c=0).validate().ok


def test_compatibility_failure_is_reported():
    fan = affine_fan(ORTHANT)
    decs = {ORIGIN: [(0, 0)], R1: [(0, 0)], R2: [(0, 0)], ORTHANT: [(1, 0)]}
    X = DecoratedFan(torus(rank=2), fan, decs)
    assert "(ii')" in validate_decorations(X).clauses()


def test_membership_and_minimality_failures():
    fan = affine_fan(ORTHANT)
    X = DecoratedFan(torus(rank=2), fan, {ORIGIN: [(0, 0)], R1: [(0, 0)], R2: [(0, 0)],
                                          ORTHANT: [(-1, 0)]})
    assert "membership" in X.validate().clauses()
    Y = DecoratedFan(torus(rank=2), fan, {ORIGIN: [(0, 0)], R1: [(1, 0)], R2: [(0, 0)],
                                          ORTHANT: [(1, 0), (2, 0)]})
    assert "(iii)" in Y.validate().clauses()


def test_empty_decoration_is_rejected():
    with pytest.raises(ValueError):
        DecoratedFan(torus(1), line_fan(), [[(0,)], [], [(0,)]])


def test_localization_examples():
    X = DecoratedFan.from_maximal(torus(1, 0), affine_fan(ORTHANT), {ORTHANT: [(1, 0)]})
    assert localize_decoration(X, ORTHANT, R1) == ((1, 0),)
    assert localize_decoration(X, ORTHANT, ORIGIN) == ((0, 0),)
    assert localize_decoration(X, ORTHANT, ORTHANT) == ((1, 0),)
    with pytest.raises(ValueError):
        localize_decoration(X, R1, R2)


def test_localization_matches_stored_faces_on_valid_fans():
    for X in [projective_line(1, 1), x_family(2), x_family(None)]:
        assert X.validate().ok
        for i, j in X.fan.face_pairs():
            assert localize_decoration(X, i, j) == X.ideal(j).gens


# -- split, smooth --------------------------------------------------------------------

def test_split_and_smooth():
    assert is_split(projective_line(1, 1)) and is_smooth(projective_line(1, 1))
    a3 = cone((1, 0, 0), (0, 1, 0), (0, 0, 1))
    X = DecoratedFan.from_maximal(torus(1, 0, 0), affine_fan(a3), {a3: [(1, 0, 0), (0, 1, 2)]})
    assert X.validate().ok and not is_split(X)
    skew = cone((1, 0), (1, 2))
    Y = DecoratedFan.from_maximal(torus(rank=2), affine_fan(skew), {skew: [(0, 0)]})
    assert is_split(Y) and not is_smooth(Y)
    Z = DecoratedFan.from_maximal(torus(1, 0), affine_fan(ORTHANT), {ORTHANT: [(1, 0), (0, 2)]})
    assert not is_smooth(Z)


# -- DS invariant and fibers -----------------------------------------------------------

def test_ds_invariant_examples():
    line = cone((1,))
    X = DecoratedFan.from_maximal(torus(1), affine_fan(line), {line: [(1,)]})
    ds = ds_invariant(X, line)
    assert ds.finite and ds.basis == ((0,),) and ds.dimension == 1
    Y = DecoratedFan.from_maximal(torus(1), affine_fan(line), {line: [(0,)]})
    assert ds_invariant(Y, line).basis == ()
    chart = cone((1, 1), (-1, 1))
    W = DecoratedFan.from_maximal(torus(1, 0), affine_fan(chart), {chart: [(1, 1), (-1, 1)]})
    ds = ds_invariant(W, chart)
    assert ds.basis == ((0, 0), (0, 1)) and ds.dimension == 2
    assert set(ds.semigroup_gens) == {(1, 1), (-1, 1), (0, 1)}


def test_ds_invariant_infinite():
    X = x_family(None)
    ds = ds_invariant(X, ORTHANT)
    assert not ds.finite and ds.basis is None


def test_ds_basis_avoids_ideal():
    for X, sigma in [(x_family(3), ORTHANT), (projective_line(2, 0, c=0), "pos")]:
        ds = ds_invariant(X, sigma)
        J = X.ideal(sigma)
        assert all(not J.contains(m) for m in ds.basis)
        assert len(enumerate_complement(J, 12)) == len(ds.basis)


def test_fiber_of_fermionic_sheaf():
    a3 = cone((1, 0, 0), (0, 1, 0), (0, 0, 1))
    X = DecoratedFan.from_maximal(torus(1, 0, 0), affine_fan(a3),
                                  {a3: [(1, 0, 0), (0, 1, 2), (0, 2, 1)]})
    assert fiber_of_J(X, a3) == ((0, 1, 2), (0, 2, 1), (1, 0, 0))
    assert fiber_of_J(X, Cone.zero(3)) == ((),)
    assert len(fiber_of_J(projective_line(1, 1), "pos")) == 1


# -- orbits ------------------------------------------------------------------------------

def test_stabilizer_table():
    even = SupertorusDatum.even
    X0, X2, Xinf = x_family(0), x_family(2), x_family(None)
    full = SupertorusDatum(2, CParam.single((1, 0)))
    rows = {
        ORTHANT: (even(2), full, full),
        R1: (even(1), even(1), SupertorusDatum(1, CParam.single((1,)))),
        R2: (even(1), even(1), even(1)),
        ORIGIN: (even(0), even(0), even(0)),
    }
    bases = {ORTHANT: ((1, 0), (0, 1)), R1: ((1, 0),), R2: ((0, 1),), ORIGIN: ()}
    for sigma, expected in rows.items():
        for X, want in zip((X0, X2, Xinf), expected):
            rep = orbit_stabilizer(X, sigma)
            assert rep.stabilizer == want
            assert rep.stabilizer_basis == bases[sigma]
            assert rep.stabilizer.rank + rep.orbit.rank == 2


def test_origin_orbit_is_the_whole_torus():
    rep = orbit_stabilizer(x_family(2), ORIGIN)
    assert rep.branch == EVEN_STABILIZER
    assert rep.orbit == SupertorusDatum(2, CParam.single((1, 0)))


def test_branch_dichotomy():
    for X in [x_family(0), x_family(1), x_family(None), projective_line(1, 0)]:
        for i, sigma in enumerate(X.cones):
            rep = orbit_stabilizer(X, i)
            meets = any(all(lt.dot(b, r) == 0 for r in sigma.rays) for b in X.decorations[i])
            assert (rep.branch == EVEN_STABILIZER) == meets
            if rep.branch == SUPER_STABILIZER:
                assert rep.orbit.is_even()


def test_orbit_closures():
    cl = orbit_closure(x_family(2), R1)
    assert isinstance(cl, DecoratedFan)
    assert cl.rank == 1 and cl.c.is_zero()
    assert cl.decoration(cone((1,))) == ((2,),)
    even = orbit_closure(x_family(None), R1)
    assert isinstance(even, Fan) and set(even.cones) == {Cone.zero(1), cone((1,))}
    # the orbit of a maximal cone is a point; this one is a super point
    point = orbit_closure(projective_line(1, 1), "pos")
    assert isinstance(point, Fan) and point.ambient_rank == 0


# -- admissible parameters ----------------------------------------------------------------

def test_admissible_c_space_examples():
    fan = projective_space_fan(2)
    decs = projective_space_decorations(fan, 2)
    X = DecoratedFan.from_maximal(torus(rank=2), fan, decs)
    assert admissible_c_space(X.fan, X.decorations) == Subspace.span([(1, 1)], 2)
    trivial = [[(0, 0)]] * len(fan.cones)
    assert admissible_c_space(fan, trivial) == Subspace.whole(2)
    line = cone((1,))
    assert admissible_c_space(affine_fan(line), [[(0,)], [(2,)]]).dim == 0


def test_admissible_c_space_is_sound():
    fan = projective_space_fan(2)
    X = DecoratedFan.from_maximal(torus(rank=2), fan, projective_space_decorations(fan, 2))
    space = admissible_c_space(X.fan, X.decorations)
    samples = [(1, 1), (2, 2), (1, 0), (0, 1), (1, -1), (3, 2)]
    for v in samples:
        Y = DecoratedFan(SupertorusDatum(2, CParam.single(v)), X.fan, X.decorations)
        ok = "(i)" not in validate_decorations(Y).clauses()
        assert ok == space.contains(v)


# -- the projective line ------------------------------------------------------------------

def test_enumerate_projective_line():
    found = enumerate_decorations(line_fan(), CParam.single((1,)), split_only=True)
    assert sorted(line_bundle_degree(X) for X in found) == [-2, -1, -1, 0]
    assert all(is_smooth(X) for X in found)
    assert len(set(found)) == 4


def test_degree():
    assert line_bundle_degree(projective_line(1, 1)) == -2
    assert line_bundle_degree(projective_line(0, 0)) == 0
    assert is_complete_rank_one(line_fan())
    with pytest.raises(ValueError):
        line_bundle_degree(x_family(1))
