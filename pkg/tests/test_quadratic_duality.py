"""Quadratic duals, truncations, Koszul resolutions, Ext algebras and linear complexes."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from levelrank.errors import DomainError
from levelrank.quadratic_duality import (
    GradedBimodule,
    Presentation,
    check_dual_truncation,
    commutative_square,
    corrupted_module,
    direct_sum,
    double_dual_check,
    expand,
    ext_agreement,
    ext_algebra,
    hilbert_test,
    koszul_resolution_check,
    linear_complex,
    path_algebra,
    phi_square_check,
    presentations_isomorphic,
    projective_module,
    quadratic_dual,
    quadratic_presentation,
    radical_square_zero,
    radical_square_zero_family,
    random_corpus,
    random_module,
    random_presentation,
    relation_free_module,
    reversal_pairing_check,
    simple_module,
    star_dual,
    tensor_over_base,
    tensor_T,
    truncate,
    zero_module,
)

FAMILY = radical_square_zero_family()
CHAIN = FAMILY["A3"]  # 1 -> 2 -> 3 with the length-two path killed
LOOP = FAMILY["loop"]  # one vertex, x with x^2 = 0


def pres(data):
    return Presentation.from_json(data)


def total(p, cutoff=6):
    return expand(p, cutoff).total_dim()


# ---------------------------------------------------------------------------
# bimodules


def test_star_dual_swaps_block():
    dual = star_dual(GradedBimodule({(2, 1, 1): ["m"]}))
    assert dual.dims() == {(1, 2, -1): 1}
    assert star_dual(GradedBimodule({})).dims() == {}


blocks = st.dictionaries(
    st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2)),
    st.integers(1, 2), max_size=5)


def _bimodule(sizes):
    return GradedBimodule({k: [f"b{i}" for i in range(n)] for k, n in sizes.items()})


@settings(max_examples=60, deadline=None)
@given(blocks)
def test_star_dual_is_a_contravariant_involution(sizes):
    M = _bimodule(sizes)
    assert star_dual(star_dual(M)).dims() == M.dims()
    for (l, r, d), n in M.dims().items():
        assert star_dual(M).dim(r, l, -d) == n


@settings(max_examples=60, deadline=None)
@given(blocks, blocks)
def test_dual_of_tensor_reverses_factors(a, b):
    M, N = _bimodule(a), _bimodule(b)
    assert star_dual(tensor_over_base(M, N)).dims() == tensor_over_base(star_dual(N), star_dual(M)).dims()
    assert reversal_pairing_check(M, N)


# ---------------------------------------------------------------------------
# presentations and duals


def test_dual_of_free_arrow():
    p = path_algebra([1, 2], [("a", 1, 2)])
    d = quadratic_dual(p)
    assert [(a.name, a.src, a.dst) for a in d.arrows] == [("a*", 2, 1)]
    assert d.relations == [] or not d.relations
    assert total(p) == total(d) == 3


def test_dual_of_square_zero_loop_is_infinite():
    d = expand(quadratic_dual(LOOP), 6)
    assert not d.finite
    assert d.graded_dims(6) == [1] * 7


def test_dual_of_square_zero_chain():
    d = quadratic_dual(CHAIN)
    assert not d.relations
    assert total(CHAIN) == 5 and total(d) == 6


def test_expand_examples():
    full = radical_square_zero([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    assert expand(full, 4).graded_dims(3) == [3, 2, 0, 0]
    assert expand(path_algebra([1, 2], [("a", 1, 2)]), 4).graded_dims(3) == [2, 1, 0, 0]
    assert total(FAMILY["cycle2"]) == 4


def test_json_round_trip_and_dotted_paths():
    data = {"vertices": [1, 2], "arrows": [{"name": "a", "src": 1, "dst": 2}, {"name": "b", "src": 2, "dst": 1}],
            "relations": [[{"path": "a.b", "coeff": "2/3"}]]}
    p = pres(data)
    assert pres(json.loads(json.dumps(p.to_json()))).to_json() == p.to_json()


@pytest.mark.parametrize("bad", [
    {"vertices": [1], "arrows": [{"name": "x", "src": 1, "dst": 2}], "relations": []},
    {"vertices": [1, 2], "arrows": [{"name": "a", "src": 1, "dst": 2}], "relations": [[{"path": "a.a", "coeff": 1}]]},
    {"vertices": [1, 1], "arrows": [], "relations": []},
    {"vertices": [1], "arrows": [{"name": "x", "src": 1, "dst": 1}], "relations": [[{"path": "x", "coeff": 1}]]},
    {"arrows": []},
])
def test_malformed_presentations_rejected(bad):
    with pytest.raises(DomainError):
        pres(bad)


def test_double_dual_on_family():
    for name, p in FAMILY.items():
        assert double_dual_check(p).ok, name
        assert presentations_isomorphic(quadratic_dual(quadratic_dual(p)), p), name


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_double_dual_random(seed):
    assert double_dual_check(random_presentation(random.Random(seed))).ok


# ---------------------------------------------------------------------------
# truncation


def test_truncation_examples():
    alg = expand(CHAIN, 5)
    corner, quotient = truncate(alg, [1, 2])
    assert corner.total_dim() == 3
    assert quotient.total_dim() == 3
    whole_corner, whole_quotient = truncate(alg, [1, 2, 3])
    assert whole_corner.total_dim() == whole_quotient.total_dim() == alg.total_dim()


def test_corner_presentation_is_path_algebra():
    corner, _ = truncate(expand(CHAIN, 5), [1, 2])
    assert presentations_isomorphic(quadratic_presentation(corner), path_algebra([1, 2], [("a", 1, 2)]))


def test_dual_truncation_examples():
    rep = check_dual_truncation(CHAIN, [1, 2])
    assert rep.ok and rep.dims_equal
    assert check_dual_truncation(CHAIN, [1, 2, 3]).ok


def test_dual_truncation_on_corpus():
    import itertools
    for p in random_corpus(5, 12):
        for r in range(1, len(p.vertices) + 1):
            for keep in itertools.combinations(p.vertices, r):
                assert check_dual_truncation(p, keep).ok, (p.to_json(), keep)


# ---------------------------------------------------------------------------
# Hilbert series and resolutions


def test_hilbert_examples():
    base = pres({"vertices": [1, 2], "arrows": [], "relations": []})
    assert hilbert_test(expand(base, 4), expand(quadratic_dual(base), 4), 4).ok
    assert hilbert_test(expand(LOOP, 6), expand(quadratic_dual(LOOP), 6), 5).ok


def test_hilbert_on_two_loops_with_one_relation():
    xy = pres({"vertices": [1], "arrows": [{"name": "x", "src": 1, "dst": 1}, {"name": "y", "src": 1, "dst": 1}],
               "relations": [[{"path": "x.y", "coeff": 1}]]})
    rep = hilbert_test(expand(xy, 5), expand(quadratic_dual(xy), 5), 4)
    # the monomial algebra k<x,y>/(xy) is Koszul, so the identity must hold
    assert rep.ok and rep.failing_degree is None


def test_koszul_examples():
    base = pres({"vertices": [1, 2], "arrows": [], "relations": []})
    rep = koszul_resolution_check(expand(base, 3), 3)
    assert rep.ok and all(not g for degs in rep.generator_degrees.values() for g in degs[1:])
    assert koszul_resolution_check(expand(CHAIN, 6), 4).ok


def test_cubic_relation_is_flagged():
    x3 = pres({"vertices": [1], "arrows": [{"name": "x", "src": 1, "dst": 1}],
               "relations": [[{"path": "x.x.x", "coeff": 1}]]})
    assert not x3.is_quadratic
    rep = koszul_resolution_check(expand(x3, 6), 4)
    assert not rep.ok and rep.first_nonlinear_step == 2


# ---------------------------------------------------------------------------
# Ext algebras


def test_ext_examples():
    base = pres({"vertices": [1, 2], "arrows": [], "relations": []})
    ext = ext_algebra(expand(base, 3), 3)
    assert [sum(ext.dims(n).values()) for n in range(4)] == [2, 0, 0, 0]
    ext = ext_algebra(expand(CHAIN, 6), 4)
    assert sum(sum(ext.dims(n).values()) for n in range(5)) == 6
    ext = ext_algebra(expand(LOOP, 6), 4)
    assert [sum(ext.dims(n).values()) for n in range(5)] == [1, 1, 1, 1, 1]


@pytest.mark.parametrize("name", ["A2", "A3", "loop", "cycle2", "kronecker"])
def test_ext_matches_dual_on_family(name):
    assert ext_agreement(FAMILY[name], 4).ok


def test_ext_matches_dual_with_commutativity_relation():
    assert ext_agreement(commutative_square(), 4).ok


# ---------------------------------------------------------------------------
# modules and the functors


def test_tensor_with_projective_gives_projective():
    alg = expand(CHAIN, 5)
    corner, _ = truncate(alg, [1, 2])
    source = path_algebra([1, 2], [("a", 1, 2)])
    psi = {"a": {alg.key_of(["a"]): Fraction(1)}}
    src = expand(source, 4)
    for v in (1, 2):
        image = tensor_T(alg, source, psi, projective_module(src, v))
        assert image.dims() == projective_module(alg, v).dims()
    assert tensor_T(alg, source, psi, zero_module(source)).dim == 0
    simple = tensor_T(alg, source, psi, simple_module(source, 1))
    assert simple.dims() == {(0, 1): 1}


def test_tensor_rejects_image_in_wrong_block():
    alg = expand(CHAIN, 5)
    source = path_algebra([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    psi = {"a": {alg.key_of(["a"]): Fraction(1)}, "b": {alg.key_of(["b"]): Fraction(1)}}
    # the path algebra has no relation, so any assignment is a homomorphism
    tensor_T(alg, source, psi, simple_module(source, 3))
    bad = {"a": {alg.key_of(["b"]): Fraction(1)}}
    with pytest.raises(DomainError):
        tensor_T(alg, source, bad, simple_module(source, 1))


def test_linear_complex_for_truncated_polynomial_module():
    A = expand(LOOP, 6)
    dual = expand(quadratic_dual(LOOP), 6)
    M = projective_module(dual, 1, max_degree=2)
    assert M.is_module()
    cx = linear_complex(A, M)
    assert [sum(cx.term_dims(k).values()) for k in range(3)] == [2, 2, 2]
    assert all(len(cx.images[k][k]) == 1 for k in range(2))
    assert cx.square_violations() == []


def test_linear_complex_of_module_in_one_degree():
    A = expand(CHAIN, 5)
    dual = expand(quadratic_dual(CHAIN), 5)
    M = direct_sum([simple_module(dual.presentation, 1), simple_module(dual.presentation, 3)])
    assert linear_complex(A, M).square_violations() == []


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_boundary_squares_to_zero_on_random_modules(seed):
    rng = random.Random(seed)
    p = random_presentation(rng)
    A = expand(p, 5)
    dual = expand(quadratic_dual(p), 5)
    M = random_module(dual, rng)
    assert M.is_module() and M.dim <= 8
    assert linear_complex(A, M).square_violations() == []


def test_corrupted_modules_break_the_square():
    rng = random.Random(11)
    found = 0
    for p in [path_algebra([1, 2, 3], [("a", 1, 2), ("b", 2, 3)]), commutative_square()]:
        A = expand(p, 5)
        dual = quadratic_dual(p)
        for _ in range(12):
            M = relation_free_module(dual, rng)
            if M is None or M.is_module():
                continue
            found += 1
            assert linear_complex(A, M).square_violations() != []
    assert found > 0


def test_corrupted_module_helper_breaks_an_axiom():
    rng = random.Random(3)
    dual = expand(quadratic_dual(CHAIN), 5)
    for _ in range(20):
        M = corrupted_module(random_module(dual, rng), rng)
        if M is not None:
            assert not M.is_module()


@pytest.mark.parametrize("seed", range(4))
def test_pushforward_square(seed):
    rng = random.Random(seed)
    assert phi_square_check(CHAIN, [1, 2], rng).ok
    assert phi_square_check(commutative_square(), [1, 2, 4], rng).ok
