import pytest

from conic import (
    decompose_root,
    dmodule_report,
    enumerate_classes,
    minimal_complete_q,
)
from conic.errors import InputError, UnsupportedOperationError

FREE, X, Y = (0, 0, 0, 0), (0, 0, 0, -1), (0, 0, 0, 1)


def test_multiplicities_sum_to_q_to_d(quadric, square, cyclic, orthant2):
    for spec in (quadric, square, cyclic, orthant2):
        for q in (1, 2, 3, 4):
            dec = decompose_root(spec, q)
            assert dec.total == q ** spec.rank
            assert sum(n for _, n in dec.counts) == dec.total


def test_trivial_root_is_the_free_module(square):
    dec = decompose_root(square, 1)
    assert dec.counts == ((FREE, 1),)


def test_quadric_halving(quadric):
    dec = decompose_root(quadric, 2)
    assert dec.counts == (((0, 0), 2), ((0, 1), 2))
    assert dec.count_of((0, 1)) == 2


def test_square_halving(square):
    dec = decompose_root(square, 2)
    assert dec.counts == ((X, 1), (FREE, 6), (Y, 1))


def test_cyclic_root_of_group_order(cyclic):
    dec = decompose_root(cyclic, 3)
    assert dec.counts == (((0, 0), 3), ((0, 1), 3), ((0, 2), 3))


def test_minimal_complete_q(quadric, square, cyclic, orthant2, orthant3):
    assert minimal_complete_q(quadric) == 2
    assert minimal_complete_q(square) == 2
    # q = 2 already reaches all three cyclic classes, before q = 3 does
    assert minimal_complete_q(cyclic) == 2
    assert minimal_complete_q(orthant2) == 1
    assert minimal_complete_q(orthant3) == 1


def test_realized_classes_grow_with_divisibility(quadric, cyclic):
    for spec in (quadric, cyclic):
        for q in (1, 2, 3):
            small = {rep for rep, _ in decompose_root(spec, q).counts}
            for k in (2, 3):
                big = {rep for rep, _ in decompose_root(spec, k * q).counts}
                assert small <= big


def test_complete_at_minimal_q(quadric, square, cyclic):
    for spec in (quadric, square, cyclic):
        q = minimal_complete_q(spec)
        realized = {rep for rep, _ in decompose_root(spec, q).counts}
        assert realized == set(enumerate_classes(spec).reps)
        if q > 1:
            below = {rep for rep, _ in decompose_root(spec, q - 1).counts}
            assert below != realized


def test_search_cap(quadric):
    with pytest.raises(UnsupportedOperationError):
        minimal_complete_q(quadric, cap=1)


def test_dmodule_reports(quadric, square, orthant2):
    rpt = dmodule_report(quadric, 3)
    assert (rpt.minimal_e, rpt.q_at_e) == (1, 3)
    assert (rpt.bound_low, rpt.bound_high) == (2, 3)
    rpt = dmodule_report(square, 2)
    assert (rpt.minimal_e, rpt.q_at_e) == (1, 2)
    assert (rpt.bound_low, rpt.bound_high) == (3, 4)
    assert "conjectural" in rpt.note
    # regular case: q = 1 is already complete, so e = 0 works
    rpt = dmodule_report(orthant2, 5)
    assert (rpt.minimal_e, rpt.q_at_e) == (0, 1)
    assert (rpt.bound_low, rpt.bound_high) == (2, 3)


def test_bad_inputs(quadric):
    with pytest.raises(InputError):
        decompose_root(quadric, 0)
    with pytest.raises(InputError):
        dmodule_report(quadric, 4)
