"""Moment-graph congruence algebras, cell polynomials and the graded decomposition."""

from math import comb

import pytest

from levelrank.affine_weyl import identity, parabolic, s
from levelrank.errors import DomainError
from levelrank.gkm_center import (
    build_center,
    cell_lengths,
    cell_poincare,
    center_agreement,
    decomposition_check,
    invariants_check,
    moment_graph,
    res_ind_characters,
)
from levelrank.instances import cell_grid, step_grid
from levelrank.laurent import Laurent

ONE = Laurent.from_exponents([0])


def q(*exps):
    return Laurent.from_exponents(exps)


def test_single_vertex_gives_polynomial_ring():
    alg = build_center((1, 1), identity(2), 4, 2)
    n = alg.nvars
    assert alg.dims() == [comb(d + n - 1, n - 1) for d in range(5)]


def test_two_cells_example():
    alg = build_center((1, 1), s(1, 2), 6, 2)
    graph = moment_graph(parabolic((1, 1), 2), s(1, 2))
    assert len(graph.vertices) == 2 and len(graph.edges) == 1
    assert alg.dims()[0] == 1
    assert alg.normalized_hilbert() == q(0, 1)
    assert alg.closure_check()
    assert alg.degree_zero_check()


def test_cell_poincare_examples():
    assert cell_poincare((1, 1, 1), identity(3), 3) == ONE
    assert cell_poincare((1, 1), s(1, 2), 2) == q(0, 1)
    assert cell_lengths((1, 1), s(1, 2), 2) == q(0, 1)


def test_res_ind_characters():
    assert res_ind_characters(1, ONE)["res_ind"] == q(-1, 1)
    assert res_ind_characters(0, ONE)["res_ind"] == ONE
    c = q(0, 1)
    out = res_ind_characters(2, c)
    assert out["res_ind"] == q(-2, 0, 2) * c == out["expected"]


def test_decomposition_examples():
    rep = decomposition_check((1, 1), 1, s(1, 2), 2)
    assert rep["identity"] and rep["splitting"]
    assert rep["poincare"] == q(0, 1).to_json()


def test_decomposition_needs_unit_entry():
    with pytest.raises(DomainError):
        decomposition_check((2, 0), 1, s(1, 2), 2)


def test_decomposition_over_step_grid():
    seen = set()
    for st in step_grid(3, 3, 6):
        rep = decomposition_check(st.mu, st.k, st.v, st.e)
        assert rep["identity"], st.label()
        assert rep.get("splitting", True), st.label()
        seen.add(st.multiplicity)
    assert {1, 2, 3} <= seen


def test_stabilizer_invariants_agree():
    assert invariants_check((1, 1), s(1, 2), 2)["ok"]
    assert invariants_check((1, 1), s(1, 2) * s(0, 2), 2)["ok"]


def test_center_is_closed_under_products_on_grid():
    for cell in list(cell_grid(2, 2, 4)):
        alg = build_center(cell.mu, cell.v, None, cell.e)
        assert alg.closure_check(), cell.label()
        assert alg.degree_zero_check(), cell.label()


def _palindromic(p: Laurent) -> bool:
    c = p.to_json()
    exps = sorted(int(k) for k in c)
    top = exps[-1] + exps[0]
    return all(c.get(str(top - int(k))) == v for k, v in c.items())


def test_hilbert_series_counts_cells_by_dimension():
    """The congruence algebra's Hilbert series equals the length generating
    function of the cells on every grid instance; it equals the
    codimension-indexed polynomial exactly when that polynomial is palindromic."""
    for cell in cell_grid(3, 3, 6):
        rep = center_agreement(cell.mu, cell.v, cell.e)
        assert rep.hilbert == rep.by_dimension, cell.label()
        assert rep.ok == _palindromic(rep.by_dimension), cell.label()
