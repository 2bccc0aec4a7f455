from fractions import Fraction

import pytest

from superfan import lattice as lt
from superfan.category import (DecorationCompatibilityError, FanCompatibilityError,
                               FiberProductUnsupported, affine_extension_check, character_map,
                               compose, fiber_product, identity, image_cone, is_isomorphism,
                               mediating_morphism, validate_morphism)
from superfan.polyhedral import cone
from superfan.semigroup import AffineSemigroup, jc_generators
from superfan.supertorus import CEquationError, ChainMismatch

from fans import half_line, point, projective_line
from morphisms import candidate_maps, commuting_pairs, situations, probe_objects

ONE = Fraction(1)


def test_identity_and_composition():
    X = projective_line(1, 1)
    assert validate_morphism(X, X, ((1,),), 1) == identity(X)
    assert compose(identity(X), identity(X)) == identity(X)


def test_decoration_direction():
    f = validate_morphism(half_line(1, 0), half_line(1, 1), ((1,),), 1)
    assert not is_isomorphism(f)
    with pytest.raises(DecorationCompatibilityError):
        validate_morphism(half_line(1, 1), half_line(1, 0), ((1,),), 1)


def test_zero_scalar_skips_decorations():
    validate_morphism(half_line(0, 0), half_line(1, 1), ((1,),), 0)


def test_fan_and_c_failures():
    with pytest.raises(FanCompatibilityError):
        validate_morphism(half_line(0, 0), half_line(0, 0), ((-1,),), 1)
    with pytest.raises(CEquationError):
        validate_morphism(half_line(1, 1), half_line(1, 1), ((1,),), 2)


def test_relabelling_is_an_isomorphism():
    X = projective_line(1, 1, c=0)
    flip = validate_morphism(X, X, ((-1,),), 1)
    assert is_isomorphism(flip)
    assert compose(flip, flip) == identity(X)
    # with c = 1 the flip would need a^2 = -1
    with pytest.raises(CEquationError):
        validate_morphism(projective_line(1, 1), projective_line(1, 1), ((-1,),), 1)


def test_compose_checks_the_chain():
    f = validate_morphism(half_line(1, 0), half_line(1, 1), ((1,),), 1)
    with pytest.raises(ChainMismatch):
        compose(f, f)


def test_affine_extension_examples():
    S = AffineSemigroup(cone((1,)))
    assert affine_extension_check((((1,),), 1), S, [(0,)], S, [(1,)])
    assert not affine_extension_check((((1,),), 1), S, [(1,)], S, [(0,)])
    assert affine_extension_check((((1,),), 0), S, [(1,)], S, [(0,)])
    assert not affine_extension_check((((-1,),), 1), S, [(0,)], S, [(0,)])
    orth = AffineSemigroup(cone((1, 0), (0, 1)))
    # the diagonal N -> N^2 pulls x and y back to t
    assert affine_extension_check((((1,), (1,)), 1), S, [(1,)], orth, [(1, 0), (0, 1)])


def test_diagonal_fiber_product():
    f1, f2 = situations()["diagonal"]
    fp = fiber_product(f1, f2)
    X = fp.obj
    assert X.rank == 1 and X.c.vectors == ((1,),)
    assert X.decoration(cone((1,))) == ((0,),)
    assert X.validate().ok


def test_fiber_product_along_identity():
    f1, f2 = situations()["identity"]
    fp = fiber_product(f1, f2)
    assert is_isomorphism(fp.proj1) and is_isomorphism(fp.proj2)


def test_scalar_zero_keeps_one_factor():
    f1, f2 = situations()["zero-scalar"]
    fp = fiber_product(f1, f2)
    assert fp.obj.c.is_zero()
    assert fp.proj1.a == 1 and fp.proj2.a == 0


def test_product_over_a_point():
    f1, f2 = situations()["over-point"]
    fp = fiber_product(f1, f2)
    assert fp.obj.rank == 2 and fp.obj.c.vectors == ((1, 0),)
    assert len(fp.obj.fan.maximal()) == 2
    assert lt.rank(character_map(fp), 2) == 2


def test_both_scalars_zero_is_unsupported():
    Y = half_line(1, 1)
    f = validate_morphism(half_line(0, 0), Y, ((1,),), 0)
    with pytest.raises(FiberProductUnsupported):
        fiber_product(f, f)


def pull_back(matrix, m, rank):
    return tuple(sum(matrix[r][j] * m[r] for r in range(len(matrix))) for j in range(rank))


@pytest.mark.parametrize("name", sorted(situations()))
def test_square_commutes(name):
    f1, f2 = situations()[name]
    fp = fiber_product(f1, f2)
    assert fp.obj.validate().ok
    assert compose(f1, fp.proj1) == compose(f2, fp.proj2)


@pytest.mark.parametrize("name", sorted(situations()))
def test_projections_carry_jc_into_jc(name):
    fp = fiber_product(*situations()[name])
    X = fp.obj
    for proj in (fp.proj1, fp.proj2):
        if proj.a == 0:
            continue
        factor = proj.dst
        for i, sigma in enumerate(X.cones):
            t = factor.fan.minimal_cone_containing(image_cone(proj.phi_bar, sigma, factor.rank))
            own = jc_generators(AffineSemigroup(sigma), X.c)
            for g in jc_generators(factor.semigroup(t), factor.c).gens:
                assert own.contains(pull_back(proj.phi_bar, g, X.rank))


@pytest.mark.parametrize("name", sorted(situations()))
def test_universal_property(name):
    f1, f2 = situations()[name]
    fp = fiber_product(f1, f2)
    probed = 0
    for Z in probe_objects(f1, f2):
        for g1, g2 in commuting_pairs(f1, f2, Z):
            h = mediating_morphism(fp, g1, g2)
            assert compose(fp.proj1, h) == g1
            assert compose(fp.proj2, h) == g2
            others = [k for k in candidate_maps(Z, fp.obj)
                      if compose(fp.proj1, k) == g1 and compose(fp.proj2, k) == g2]
            assert others in ([], [h])
            probed += 1
    assert probed > 0


def test_mediating_requires_common_source():
    f1, f2 = situations()["diagonal"]
    fp = fiber_product(f1, f2)
    g1 = identity(f1.src)
    g2 = validate_morphism(point(), f2.src, ((),), 0)
    with pytest.raises(ChainMismatch):
        mediating_morphism(fp, g1, g2)
