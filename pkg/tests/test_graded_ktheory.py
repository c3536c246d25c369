"""Graded matrices of the step functors on Verma classes and their composition identities."""

import pytest

from levelrank.affine_weyl import identity, parabolic, relative_min_reps, s
from levelrank.errors import DomainError
from levelrank.graded_ktheory import (
    column_degree_check,
    composition_check,
    duality_bookkeeping,
    matrix_E_graded,
    matrix_F,
    projective_oracle,
    solve_F_shifts,
)
from levelrank.instances import compositions, step_grid
from levelrank.laurent import Laurent

NU_11 = (1, 1)


def test_F_collapses_coset():
    F = matrix_F((1, 1), 1, NU_11, s(1, 2))
    assert F.to_json()["rows"]["elements"] == ["id"]
    assert F.at_one() == {(0, 0): 1, (0, 1): 1}


def test_bound_must_be_longest_representative():
    with pytest.raises(DomainError):
        matrix_F((1, 1), 1, NU_11, identity(2))


def test_E_column_has_length_grading():
    E = matrix_E_graded((1, 1), 1, NU_11, s(1, 2))
    assert E.column(0) == {0: Laurent.from_exponents([0]), 1: Laurent.from_exponents([1])}


def test_shift_solution_example():
    sol = solve_F_shifts((1, 1), 1, NU_11, s(1, 2))
    assert sol.to_json()["feasible"]
    shifts = sol.to_json()["shifts"]
    # on the single coset {id, s1}: {c(w z) + l(z)} must be {-1, +1}
    assert sorted([shifts["0"] + 0, shifts["1"] + 1]) == [-1, 1]


def test_composition_example():
    rep = composition_check((1, 1), 1, NU_11, s(1, 2))
    assert rep["ungraded_identity"] and rep["unbalanced_graded_identity"] and rep["m"] == 1


def test_projective_oracle_example():
    assert projective_oracle((1, 1), 1, s(1, 2))


def test_bookkeeping_small_bound():
    assert duality_bookkeeping((1, 1), 1, NU_11, s(1, 2))["ok"]


def test_rejects_wrong_entry():
    with pytest.raises(DomainError):
        matrix_F((2, 1), 1, (1, 1, 1), s(1, 3) * s(2, 3) * s(1, 3))


def _grid():
    for st in step_grid(3, 3, 6):
        yield st
    for st in step_grid(3, 3, 6, mirror=True):
        yield st


@pytest.mark.parametrize("st", list(_grid()), ids=lambda st: st.label())
def test_step_identities_on_grid(st):
    N = sum(st.mu)
    for nu in compositions(N, N, positive=True)[:4] if N > 1 else [(1,)]:
        assert composition_check(st.mu, st.k, nu, st.v)["ungraded_identity"]
        assert column_degree_check(st.mu, st.k, nu, st.v)
        assert solve_F_shifts(st.mu, st.k, nu, st.v).to_json()["feasible"]
        if not st.mirror:
            assert duality_bookkeeping(st.mu, st.k, nu, st.v)["ok"]
    assert projective_oracle(st.mu, st.k, st.v)


def test_E_column_sums_count_relative_cosets():
    mu, k, v = (1, 2), 1, s(1, 3) * s(2, 3) * s(1, 3)
    E = matrix_E_graded(mu, k, (1, 1, 1), v)
    small, big = parabolic(mu, 2), parabolic((0, 3), 2)
    size = len(relative_min_reps(small, big))
    for c in range(len(E.cols)):
        assert sum(v.at_one() for v in E.column(c).values()) == size
