"""Extended affine symmetric group: actions, orbits, Bruhat order and coset index sets."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelrank.affine_weyl import (
    AffinePermutation,
    act,
    antidominant_rep,
    bruhat_leq,
    coset_reps,
    elements_up_to_length,
    identity,
    index_set_identities,
    inverse_bijection,
    inverse_bijection_ball,
    is_antidominant,
    orbit_in_box,
    parabolic,
    parabolic_inclusion,
    pi,
    random_element,
    relative_min_reps,
    s,
    upsilon_equivariance_check,
)
from levelrank.errors import DomainError
from levelrank.lattice_quiver import wt_e


def test_action_examples():
    assert act(s(0, 2), (1, 2), 2) == (0, 3)
    assert act(identity(3), (4, -1, 2), 5) == (4, -1, 2)
    assert act(pi(3), (1, 2, 3), 2) == (2, 3, 3)


def test_antidominance_examples():
    assert is_antidominant((1, 2, 3), 2)
    assert is_antidominant((0, 0), 3)
    rep, w = antidominant_rep((3, 1), 2)
    assert rep == (1, 3)
    assert w == s(1, 2)
    assert w.act((3, 1), 2) == rep


def test_length_and_bruhat_examples():
    assert identity(2).length == 0
    assert s(1, 2).length == 1
    assert bruhat_leq(identity(2), s(1, 2))
    assert bruhat_leq(s(1, 2), s(0, 2) * s(1, 2))
    assert not bruhat_leq(s(0, 2) * s(1, 2), s(1, 2))


def test_coset_reps_examples():
    data = parabolic((1, 1), 2)
    assert coset_reps(data, s(1, 2)).as_set() == {identity(2), s(1, 2)}
    assert coset_reps(data, identity(2)).as_set() == {identity(2)}
    assert coset_reps(data, s(1, 2), dominance=(2,)).as_set() == {s(1, 2)}


def test_parse_round_trip():
    w = AffinePermutation.parse("s1*s0*pi", 2)
    assert AffinePermutation.parse(w.word_string(), 2) == w
    with pytest.raises(DomainError):
        AffinePermutation.parse("s7", 2)


def test_index_set_identities_trivial_bound():
    rep = index_set_identities((1, 1), (0, 2), (1, 1), identity(2))
    assert rep["all_equal"]


@pytest.mark.parametrize("x", [identity(2), s(0, 2), s(1, 2) * s(0, 2)])
def test_index_set_identities_small_bounds(x):
    assert index_set_identities((1, 1), (0, 2), (1, 1), x)["all_equal"]


def test_index_set_identities_rejects_non_dominant_x():
    with pytest.raises(DomainError):
        index_set_identities((1, 1), (0, 2), (2,), identity(2))


def test_inverse_bijection_examples():
    assert inverse_bijection((1, 1), (2,), s(1, 2)).equal
    ball = inverse_bijection_ball((1, 1), (1, 1), 4)
    assert ball.equal and len(ball.left) == len(ball.right) > 1


def test_upsilon_equivariance_examples():
    assert upsilon_equivariance_check((1, 2), identity(2), 2, 1)
    assert upsilon_equivariance_check((1, 2), s(0, 2), 2, 1)
    assert act(s(0, 2), (1, 3), 3) == (0, 4)


def test_relative_reps_count_matches_block_size():
    assert parabolic_inclusion((1, 2), (0, 3))
    assert len(relative_min_reps(parabolic((1, 2), 3), parabolic((0, 3), 3))) == 3


@pytest.mark.parametrize("N", [2, 3])
def test_generator_relations(N):
    for i in range(N):
        assert s(i, N) * s(i, N) == identity(N)
        j = (i + 1) % N
        if N > 2:
            assert s(i, N) * s(j, N) * s(i, N) == s(j, N) * s(i, N) * s(j, N)
        assert pi(N) * s(j, N) == s(i, N) * pi(N)


@pytest.mark.parametrize("lam,e", [((1, 2), 2), ((0, 2, 3), 3), ((0, 0), 2)])
def test_orbit_equals_weight_fiber_in_box(lam, e):
    lo, hi = -1, 4
    fiber = {mu for mu in itertools.product(range(lo, hi + 1), repeat=len(lam)) if wt_e(mu, e) == wt_e(lam, e)}
    assert set(orbit_in_box(lam, e, lo, hi)) == fiber


weights = st.lists(st.integers(-6, 6), min_size=2, max_size=4)


@settings(max_examples=80, deadline=None)
@given(weights, st.integers(2, 4))
def test_antidominant_rep_idempotent(lam, e):
    rep, w = antidominant_rep(lam, e)
    assert is_antidominant(rep, e)
    assert w.act(rep, e) == tuple(lam)
    assert antidominant_rep(rep, e)[0] == rep


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.integers(0, 10**6), st.integers(-2, 2))
def test_length_invariant_under_rotation(N, seed, n):
    w = random_element(N, 5, random.Random(seed))
    assert (w * pi(N, n)).length == w.length


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6), st.data())
def test_upsilon_equivariance_random(N, seed, data):
    e = data.draw(st.integers(2, 4))
    k = data.draw(st.integers(0, e - 1))
    lam = data.draw(st.lists(st.integers(-5, 5), min_size=N, max_size=N))
    w = random_element(N, 5, random.Random(seed))
    assert upsilon_equivariance_check(lam, w, e, k)


def test_bruhat_is_partial_order_on_ball():
    ball = elements_up_to_length(2, 3)
    for a in ball:
        assert bruhat_leq(a, a)
        for b in ball:
            if a != b and bruhat_leq(a, b):
                assert not bruhat_leq(b, a)
                assert a.length < b.length
