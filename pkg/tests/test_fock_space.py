"""Finite wedge spaces, Chevalley operators, residues and the level-rank embedding."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelrank.errors import DomainError
from levelrank.fock_space import (
    Multipartition,
    WedgeVector,
    apply_op,
    block_enumerate,
    blocks_by_residue,
    box_adjacency_check,
    chevalley_check,
    intertwining_check,
    levelrank_embed,
    multipartitions,
    residue,
    straighten,
    u_action,
    wedge_basis,
)
from levelrank.lattice_quiver import RootVector as R
from levelrank.lattice_quiver import upsilon, weight_class_difference

W = WedgeVector


def test_u_action_examples():
    assert u_action("f", 0, 2, 2) == 3
    assert u_action("e", 1, 1, 2) is None
    assert u_action("e", 1, 2, 2) == 1


def test_apply_op_examples():
    out = apply_op("f", 1, W.basis((3, 1), (2,), 2))
    assert out == W.from_dict({(4, 1): 1, (3, 2): 1}, (2,), 2)
    assert apply_op("e", 1, W.basis((2, 1), (2,), 2)).is_zero()
    assert apply_op("f", 0, W.zero((2,), 2)).is_zero()


def test_straightening_sign_and_vanishing():
    assert straighten((1, 3), (2,)) == (-1, (3, 1))
    assert straighten((2, 2), (2,))[0] == 0
    assert W.basis((1, 3), (2,), 2) == W.basis((3, 1), (2,), 2).scaled(-1)


def test_wedge_json_round_trip():
    v = W.from_dict({(3, 1): Fraction(1, 2), (2, 1): -3}, (2,), 2)
    assert W.from_json(v.to_json(), (2,), 2) == v


def test_residue_examples():
    assert residue(Multipartition.of([]), (3,), 2) == R()
    assert residue(Multipartition.of([2, 1]), (3,), 2) == R.of({0: 2, 1: 1})
    deformed = residue(Multipartition.of([2, 1]), (3,), 2, deformed=True)
    assert deformed == R.of({(3, 1): 1, (4, 1): 1, (2, 1): 1})


def test_residue_level_mismatch():
    with pytest.raises(DomainError):
        residue(Multipartition.of([1], [1]), (3,), 2)


def test_block_enumerate_examples():
    assert block_enumerate(0, None, (3,), 2) == [Multipartition.of([])]
    assert block_enumerate(1, R.simple(1), (3,), 2) == [Multipartition.of([1])]
    assert block_enumerate(1, R.simple(0), (3,), 2) == []


@pytest.mark.parametrize("nu,e", [((3, 1), 2), ((0, 2, 1), 3), ((1,), 4)])
def test_blocks_partition_all_multipartitions(nu, e):
    for d in range(4):
        blocks = blocks_by_residue(d, nu, e)
        assert sum(len(b) for b in blocks.values()) == len(multipartitions(d, len(nu)))
        assert all(alpha.height == d for alpha in blocks)


def test_levelrank_embed_examples():
    assert levelrank_embed(W.basis((1, 0), (2,), 2), 1) == W.basis((1, 0), (2,), 3)
    assert levelrank_embed(W.zero((2,), 2), 1).is_zero()
    assert levelrank_embed(W.basis((2,), (1,), 2), 1) == W.basis((3,), (1,), 3)


def test_intertwining_on_single_factor_at_k():
    e, k = 2, 1
    v = W.basis((k,), (1,), e)
    left = levelrank_embed(apply_op("f", k, v), k)
    assert left == W.basis((upsilon(k + 1, e, k),), (1,), e + 1)


@pytest.mark.parametrize("e", [2, 3])
@pytest.mark.parametrize("nu", [(1,), (2,), (1, 1), (2, 1)])
def test_intertwining(e, nu):
    for k in range(e):
        assert intertwining_check(k, nu, e).ok


@pytest.mark.parametrize("e", [2, 3])
@pytest.mark.parametrize("nu", [(1,), (2,), (1, 1)])
def test_chevalley_relations(e, nu):
    assert chevalley_check(nu, e, -3, 3).ok


@pytest.mark.parametrize("nu,e", [((2,), 2), ((2, 1), 2), ((1, 1), 3)])
def test_f_adds_boxes_of_matching_residue(nu, e):
    assert box_adjacency_check(nu, e, 3).ok


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2,), (1, 1), (3,), (2, 1)]), st.integers(2, 4), st.data())
def test_operators_shift_weight_by_simple_root(nu, e, data):
    lam = data.draw(st.sampled_from(wedge_basis(nu, -3, 3)))
    i = data.draw(st.integers(0, e - 1))
    for op, sign in (("f", -1), ("e", 1)):
        for mu, _ in apply_op(op, i, W.basis(lam, nu, e)).terms:
            assert weight_class_difference(mu, lam, e) == R.simple(i).scaled(sign)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2,), (1, 1), (2, 1)]), st.integers(2, 3), st.data())
def test_embed_injective_on_basis(nu, e, data):
    k = data.draw(st.integers(0, e - 1))
    basis = wedge_basis(nu, -2, 3)
    images = [levelrank_embed(W.basis(lam, nu, e), k) for lam in basis]
    assert len({tuple(v.terms) for v in images}) == len(basis)
