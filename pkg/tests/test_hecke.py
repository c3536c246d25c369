"""Affine Hecke algebra normal forms, the sign-twisting involution and cyclotomic quotients."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelrank.errors import DomainError
from levelrank.hecke import (
    CyclotomicAlgebra,
    HeckeAlgebra,
    cyclotomic_dimension,
    cyclotomic_reduce,
    involution_IM,
    involution_relation_check,
    symmetric_center_check,
    transpose_weight_check,
)


@pytest.fixture
def H2():
    return HeckeAlgebra(2)


def test_quadratic_relation(H2):
    q, T = H2.q, H2.T(1)
    assert T * T == (q - 1) * T + q


def test_unit_and_cross_relation(H2):
    q, T = H2.q, H2.T(1)
    assert H2.one() * T == T
    assert T * H2.X(2) == H2.X(1) * T + (q - 1) * H2.X(2)


def test_t_inverse(H2):
    assert H2.T(1) * H2.t_inverse(1) == H2.one()
    assert H2.t_inverse(1) == Fraction(1, 2) * H2.T(1) - Fraction(1, 2)
    at_one = HeckeAlgebra(2, Fraction(1))
    assert at_one.t_inverse(1) == at_one.T(1)


def test_symbolic_parameter_inverse():
    pytest.importorskip("sympy")
    S = HeckeAlgebra.symbolic(2)
    assert S.T(1) * S.t_inverse(1) == S.one()


def test_involution_examples(H2):
    q = H2.q
    assert involution_IM(H2.one()) == H2.one()
    assert involution_IM(H2.T(1)) == -H2.T(1) + (q - 1)
    assert involution_IM(involution_IM(H2.X(1))) == H2.X(1)


@pytest.mark.parametrize("d", [2, 3])
def test_involution_respects_relations(d):
    report = involution_relation_check(HeckeAlgebra(d))
    assert report["homomorphism"] == []


def test_braid_relation():
    A = HeckeAlgebra(3)
    assert A.T(1) * A.T(2) * A.T(1) == A.T(2) * A.T(1) * A.T(2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_associativity(d, seed):
    A = HeckeAlgebra(d)
    rng = random.Random(seed)
    x, y, z = (A.random_element(rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_involution_is_an_involution_on_random_elements(seed):
    A = HeckeAlgebra(2)
    x = A.random_element(random.Random(seed))
    assert involution_IM(involution_IM(x)) == x


@pytest.mark.parametrize("l,d,expected", [(1, 2, 2), (1, 3, 6), (2, 2, 8)])
def test_cyclotomic_dimensions(l, d, expected):
    assert cyclotomic_dimension(l, d) == expected


def test_cyclotomic_level_one_forces_scalar():
    A = HeckeAlgebra(2)
    assert cyclotomic_reduce(A.X(1), [Fraction(3)]) == cyclotomic_reduce(3 * A.one(), [Fraction(3)])
    assert cyclotomic_reduce(A.zero(), [Fraction(3)]) == {}


def test_cyclotomic_relations_and_center():
    alg = CyclotomicAlgebra(2, [Fraction(3), Fraction(5)])
    assert alg.relation_residuals() == []
    assert alg.dimension() == alg.expected_dimension() == 8
    assert symmetric_center_check(alg) == []
    assert transpose_weight_check(2, [Fraction(3), Fraction(5)])


def test_non_generic_parameters_rejected():
    with pytest.raises(DomainError):
        CyclotomicAlgebra(2, [Fraction(3), Fraction(6)])
