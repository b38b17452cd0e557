import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conic import (
    ConeSpec,
    dual_extreme_rays,
    from_dual_rays,
    from_normals,
    from_primal_rays,
    primal_generators,
    restrict_to_facet,
    validate,
)
from conic.cone import content_hash
from conic.errors import InputError
from conic.ratgeom import dot, rank


def test_quadric_from_dual_rays():
    spec = from_dual_rays(2, [(1, 1), (-1, 1)])
    assert set(spec.normals) == {(1, 1), (-1, 1)}
    checks = validate(spec)
    assert checks.pointed and checks.full_dimensional and checks.simplicial


def test_square_from_primal_rays():
    spec = from_primal_rays(3, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
    assert len(spec.normals) == 4
    assert not validate(spec).simplicial
    # every input ray satisfies every normal
    for ray in [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]:
        assert all(dot(ray, n) >= 0 for n in spec.normals)
    assert spec.generators is not None
    assert set(spec.generators) == {(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)}


def test_rejects_unpointed():
    # a half-plane: dual rays containing a line
    with pytest.raises(InputError):
        from_dual_rays(2, [(1, 0), (-1, 0)])


def test_rejects_low_dimensional():
    with pytest.raises(InputError):
        from_primal_rays(2, [(1, 0), (2, 0)])


def test_rejects_redundant_normal():
    # (1, 1) is a positive combination of the axes
    with pytest.raises(InputError):
        from_normals(2, [(1, 0), (0, 1), (1, 1)])


def test_rejects_imprimitive_normal():
    with pytest.raises(InputError):
        from_normals(2, [(2, 0), (0, 1)])


def test_rejects_rank_mismatch():
    with pytest.raises(InputError):
        from_normals(2, [(1, 0, 0), (0, 1, 0)])


def test_dual_round_trip_quadric():
    spec = from_normals(2, [(1, 1), (-1, 1)])
    rays = primal_generators(spec)
    back = from_primal_rays(2, rays)
    assert set(back.normals) == set(spec.normals)


def test_dual_round_trip_square(square):
    rays = primal_generators(square)
    assert len(rays) == 4
    back = from_primal_rays(3, rays)
    assert set(back.normals) == set(square.normals)


def test_dual_extreme_rays_orthant():
    rays = dual_extreme_rays(((1, 0, 0), (0, 1, 0), (0, 0, 1)), 3)
    assert set(rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


@settings(max_examples=40, deadline=None)
@given(st.lists(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3)),
    min_size=3, max_size=6, unique=True))
def test_primal_rays_round_trip_random_3d(rays):
    # rays with positive last coordinate always span a pointed cone
    if rank(rays) < 3:
        return
    spec = from_primal_rays(3, rays)
    # validity implied by construction; all rays obey all normals
    for ray in rays:
        assert all(dot(ray, n) >= 0 for n in spec.normals)
    gens = primal_generators(spec)
    again = from_primal_rays(3, gens)
    assert set(again.normals) == set(spec.normals)


def test_content_hash_depends_on_order():
    a = from_normals(2, [(1, 1), (-1, 1)])
    b = from_normals(2, [(-1, 1), (1, 1)])
    assert content_hash(a) != content_hash(b)
    assert content_hash(a) == content_hash(from_normals(2, [(1, 1), (-1, 1)]))


def test_restrict_square_facet_zero(square):
    fr = restrict_to_facet(square, 0)
    assert fr.basis == ((0, 1, 0), (0, 0, 1))
    # raw functionals keep every other normal, in index order
    assert fr.functionals == ((1, (1, 0)), (2, (0, 1)), (3, (-1, 1)))
    # the middle one is redundant for the cleaned cone
    assert fr.cone.normals == ((1, 0), (-1, 1))
    assert fr.kept == ((1, 1), (3, 1))


def test_restrict_quadric_has_scale_two(quadric):
    fr = restrict_to_facet(quadric, 0)
    assert fr.basis == ((-1, 1),)
    assert fr.functionals == ((1, (2,)),)
    assert fr.cone.normals == ((1,),)
    assert fr.kept == ((1, 2),)


def test_restrict_cyclic_has_scale_three(cyclic):
    fr = restrict_to_facet(cyclic, 0)
    assert fr.functionals == ((1, (-3,)),)
    assert fr.kept[0][1] == 3


def test_restrict_orthant_is_clean(orthant3):
    fr = restrict_to_facet(orthant3, 0)
    assert fr.cone.normals == ((1, 0), (0, 1))
    assert all(scale == 1 for _, scale in fr.kept)


def test_restrict_rank_one_unsupported():
    spec = from_normals(1, [(1,)])
    with pytest.raises(InputError):
        restrict_to_facet(spec, 0)


def test_restrict_bad_index(square):
    with pytest.raises(InputError):
        restrict_to_facet(square, 9)


def test_spec_is_hashable_and_frozen(square):
    d = {square: 1}
    assert d[square] == 1
    with pytest.raises(Exception):
        square.rank = 5
