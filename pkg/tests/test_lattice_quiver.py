"""Quivers, root and weight lattices, the doubling maps and the integer map Upsilon."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelrank.errors import DomainError
from levelrank.lattice_quiver import (
    RootVector,
    WeightVector,
    beta_offset,
    cartan_entry,
    commuting_squares,
    cyclic_doubling,
    cyclic_quiver,
    doubling_isomorphism_check,
    iota_chi,
    linear_union_quiver,
    phi_root,
    phi_weight,
    pi_e,
    pi_root,
    pi_vertex,
    rho_nu,
    root_from_weight,
    upsilon,
    upsilon_weight,
    weight_class_difference,
    weight_from_tuple,
    weight_to_tuple,
    wt_chi_e,
    wt_e,
)

R = RootVector


def test_cartan_entries():
    assert cartan_entry(cyclic_quiver(3), 0, 0) == 2
    assert cartan_entry(cyclic_quiver(3), 0, 1) == -1
    assert cartan_entry(cyclic_quiver(2), 0, 1) == -2


def test_cyclic_quiver_has_one_arrow_per_step_and_no_loops():
    for e in range(2, 6):
        q = cyclic_quiver(e)
        for i in range(e):
            assert q.arrow_count(i, i) == 0
            for j in range(e):
                assert q.arrow_count(i, j) == (1 if j == (i + 1) % e else 0)


def test_linear_union_arrows_shift_first_coordinate():
    q = linear_union_quiver(2, -3, 3)
    assert q.arrow_count((0, 1), (1, 1)) == 1
    assert q.arrow_count((0, 1), (1, 2)) == 0
    assert q.arrow_count((1, 1), (0, 1)) == 0


def test_phi_root_examples():
    assert phi_root(R.simple(1), cyclic_doubling(2, 1)) == R.of({1: 1, 2: 1})
    assert phi_root(R(), cyclic_doubling(2, 1)) == R()
    assert phi_root(R.of({0: 1, 2: 1}), cyclic_doubling(3, 0)) == R.of({0: 1, 1: 1, 3: 1})


def test_phi_weight_inserts_zero_after_position_k():
    image = phi_weight(weight_from_tuple((5, 7)), cyclic_doubling(2, 1))
    assert weight_to_tuple(image, 3) == (5, 0, 7)
    assert phi_weight(WeightVector.of({}), cyclic_doubling(2, 1)) == WeightVector.of({})


def test_phi_weight_k_zero_prepends_zero():
    image = phi_weight(weight_from_tuple((1, 1, 1)), cyclic_doubling(3, 0))
    assert weight_to_tuple(image, 4) == (0, 1, 1, 1)


def test_upsilon_examples():
    assert upsilon(2, 2, 1) == 3
    assert upsilon(0, 3, 1) == 0
    assert upsilon(-1, 2, 1) == -2


def test_upsilon_rejects_small_e():
    with pytest.raises(DomainError):
        upsilon(2, 1, 0)


def test_pi_examples():
    assert pi_vertex((5, 2), 3) == 2
    assert pi_vertex((0, 1), 3) == 0


def test_pi_after_phi_square_on_simple_root():
    alpha = R.simple((1, 1))
    assert commuting_squares(alpha, WeightVector.of({(1, 1): 1}), 2, 1) == {
        "roots": True, "weights": True, "sequences": True}
    assert phi_root(pi_root(alpha, 2), cyclic_doubling(2, 1)) == R.of({1: 1, 2: 1})


def test_wt_examples():
    assert wt_e((1, 2), 2) == WeightVector.of({0: 1, 1: 1})
    assert wt_e((0, 0, 0), 2) == WeightVector.of({0: 3})


def test_weight_class_difference_of_neighbours():
    # wt^chi(3,1) - wt^chi(2,1) = eps_1 - eps_0 + chi, which is minus iota^chi(alpha_0)
    assert weight_class_difference((3, 1), (2, 1), 2) == R.of({0: -1})
    assert weight_class_difference((2, 1), (3, 1), 2) == R.simple(0)


def test_beta_offset_examples():
    assert rho_nu((2,)) == (2, 1)
    assert upsilon_weight((2, 1), 2, 1) == (3, 1)
    assert beta_offset((2,), 2, 1) == R.simple(2)
    assert beta_offset((2, 2), 2, 1) == beta_offset((2,), 2, 1).scaled(2)


def test_beta_offset_vanishes_when_upsilon_fixes_rho():
    nu = (1,)
    assert upsilon_weight(rho_nu(nu), 3, 2) == rho_nu(nu)
    assert beta_offset(nu, 3, 2) == R()


@pytest.mark.parametrize("e", [2, 3, 4, 5])
def test_doubling_matches_next_cyclic_quiver(e):
    for k in range(e):
        assert doubling_isomorphism_check(e, k)


roots = st.dictionaries(st.integers(0, 3), st.integers(0, 3), max_size=4)


@settings(max_examples=80, deadline=None)
@given(roots, roots)
def test_iota_chi_injective(a, b):
    q = cyclic_quiver(4)
    ra, rb = R.of(a), R.of(b)
    assert (iota_chi(ra, q) == iota_chi(rb, q)) == (ra == rb)
    assert root_from_weight(iota_chi(ra, q), q) == ra


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.data())
def test_upsilon_strictly_increasing_and_misses_k_plus_one(e, data):
    k = data.draw(st.integers(0, e - 1))
    values = [upsilon(n, e, k) for n in range(-3 * e, 3 * e)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(v % (e + 1) != (k + 1) % (e + 1) for v in values)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 4), st.data())
def test_commuting_squares_random(e, data):
    k = data.draw(st.integers(0, e - 1))
    support = st.tuples(st.integers(-2, 3), st.integers(1, 2))
    alpha = R.of(data.draw(st.dictionaries(support, st.integers(0, 2), max_size=3)))
    mu = WeightVector.of(data.draw(st.dictionaries(support, st.integers(-2, 2), max_size=3)))
    assert all(commuting_squares(alpha, mu, e, k).values())


def test_pi_e_dispatches_on_kind():
    assert pi_e((4, 1), 3) == 1
    assert pi_e(R.simple((4, 1)), 3) == R.simple(1)


def test_wt_chi_records_total_content():
    assert wt_chi_e((3, 1), 2).chi == 4
