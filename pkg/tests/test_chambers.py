from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conic import (
    canonical_class,
    chamber_of,
    chamber_witness,
    degree,
    enumerate_classes,
    is_adjacent,
    is_feasible,
    iso_witness,
    leq,
    translation_lattice,
)
from conic.chambers import nhat, pairings
from conic.errors import InputError
from conic.ratgeom import add, dot

ceil2 = st.tuples(st.integers(-2, 2), st.integers(-2, 2))


def members(spec, c, radius):
    # lattice points of the conic module named by c, within a box
    out = set()
    for m in product(range(-radius, radius + 1), repeat=spec.rank):
        if all(dot(m, n) >= ci for n, ci in zip(spec.normals, c)):
            out.add(m)
    return out


def test_chamber_of_examples(quadric):
    assert chamber_of(quadric, (0, 0)) == (0, 0)
    # v = (1/3, 1/2): pairings 5/6 and 1/6 round up to 1 and 1
    from fractions import Fraction
    v = (Fraction(1, 3), Fraction(1, 2))
    assert chamber_of(quadric, v) == (1, 1)


def test_chamber_of_own_witness_round_trip(square):
    for c in [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (1, 1, 1, 1)]:
        w = chamber_witness(square, c)
        assert w is not None
        assert chamber_of(square, w) == c


def test_square_corrected_feasibility(square):
    # (1,0,0,0) is a genuine chamber, adjacent to the free one
    assert is_feasible(square, (1, 0, 0, 0))
    assert is_adjacent(square, (0, 0, 0, 0), (1, 0, 0, 0))


def test_square_infeasible_example(square):
    # strips x1 <= 0 and 1 < x1 + x3 <= 2 with x3 <= 0, x2 <= 0 < x2 + x3
    assert not is_feasible(square, (0, 0, 2, 0))


def test_class_counts(quadric, square, cyclic, orthant2):
    assert enumerate_classes(quadric).reps == ((0, 0), (0, 1))
    assert enumerate_classes(square).reps == (
        (0, 0, 0, -1), (0, 0, 0, 0), (0, 0, 0, 1))
    assert enumerate_classes(cyclic).reps == ((0, 0), (0, 1), (0, 2))
    assert enumerate_classes(orthant2).reps == ((0, 0),)
    for spec in (quadric, square, cyclic, orthant2):
        cl = enumerate_classes(spec)
        assert cl.bfs_count == cl.grid_count == len(cl.reps)


def test_labels_free_class_is_a0(square):
    cl = enumerate_classes(square)
    assert cl.labels == ("A1", "A0", "A2")
    assert cl.rep_of("A0") == (0, 0, 0, 0)
    assert cl.label_of((0, 0, 0, -1)) == "A1"
    with pytest.raises(InputError):
        cl.rep_of("A9")


def test_translation_lattices(quadric, square, cyclic):
    assert translation_lattice(quadric) == ((1, 1), (0, 2))
    assert translation_lattice(cyclic) == ((1, 1), (0, 3))
    assert translation_lattice(square) == (
        (1, 0, 0, 1), (0, 1, 0, -1), (0, 0, 1, 1))


def test_canonical_class_is_translation_invariant(square):
    lat = translation_lattice(square)
    c = (1, 0, 0, 0)
    for row in lat:
        shifted = add(c, row)
        assert canonical_class(square, shifted) == canonical_class(square, c)


def test_iso_witness_round_trip(square):
    m = iso_witness(square, (1, 0, 0, 1), (0, 0, 0, 0))
    assert m is not None
    assert add((0, 0, 0, 0), nhat(square, m)) == (1, 0, 0, 1)
    assert iso_witness(square, (0, 0, 0, 0), (0, 0, 0, 1)) is None


@settings(max_examples=60, deadline=None)
@given(ceil2, ceil2)
def test_leq_matches_containment_oracle_quadric(quadric, a, b):
    if not (is_feasible(quadric, a) and is_feasible(quadric, b)):
        return
    # within a big box, module containment is exactly entrywise >=
    got = leq(quadric, a, b)
    box_a = members(quadric, a, 10)
    box_b = members(quadric, b, 10)
    assert got == (box_a <= box_b)


@settings(max_examples=60, deadline=None)
@given(ceil2, ceil2)
def test_degree_strictly_drops_under_inclusion(cyclic, a, b):
    if not (is_feasible(cyclic, a) and is_feasible(cyclic, b)):
        return
    if leq(cyclic, a, b) and a != b:
        assert degree(b) - degree(a) >= 1


@settings(max_examples=60, deadline=None)
@given(ceil2)
def test_every_point_lies_in_its_chamber(cyclic, c):
    if not is_feasible(cyclic, c):
        return
    w = chamber_witness(cyclic, c)
    prs = pairings(cyclic, w)
    for p, ci in zip(prs, c):
        assert ci - 1 < p <= ci


def covering_pairs(spec, lo, hi):
    cs = [c for c in product(range(lo, hi + 1), repeat=len(spec.normals))
          if is_feasible(spec, c)]
    for a in cs:
        for b in cs:
            if a != b and leq(spec, a, b):
                yield a, b


def test_covering_three_way_equivalence(quadric, cyclic):
    # inclusion-adjacent pairs are exactly the degree-one drops
    for spec in (quadric, cyclic):
        for a, b in covering_pairs(spec, -2, 2):
            gap = degree(b) - degree(a)
            strictly_between = any(
                c != a and c != b and leq(spec, a, c) and leq(spec, c, b)
                for c in product(*[range(bb, aa + 1)
                                   for aa, bb in zip(a, b)]))
            assert (gap == 1) == (not strictly_between)
            if gap == 1:
                assert is_adjacent(spec, a, b)


def test_adjacent_needs_a_shared_wall(square):
    # (0,0,0,0) and (0,0,0,1) differ in one coordinate but the wall
    # x2 + x3 = 0 meets both closures, so they are adjacent
    assert is_adjacent(square, (0, 0, 0, 1), (0, 0, 0, 0))
    # several coordinates apart is never adjacent
    assert not is_adjacent(square, (0, 0, 0, 0), (1, 1, 1, 1))
    with pytest.raises(InputError):
        is_adjacent(square, (0, 0, 0, 0), (2, 0, 0, 0))


def test_degree_values():
    assert degree((0, 0, 0, 0)) == 0
    assert degree((1, 0, 0, -1)) == 0
    assert degree((0, 1)) == -1
