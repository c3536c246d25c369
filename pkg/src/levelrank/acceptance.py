"""Corpus runner for the eleven acceptance criteria.

Each criterion is a function of a ``Profile`` returning a ``CriterionResult``
with a pass flag, the number of elementary checks, the elapsed time and a
JSON-friendly detail record (failures are listed, never hidden).
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import quadratic_duality as qd
from .affine_weyl import (antidominant_rep, index_set_identities, is_antidominant, is_nu_dominant,
                          parabolic, random_element, upsilon_equivariance_check)
from .fock_space import chevalley_check, intertwining_check
from .gkm_center import center_agreement, decomposition_check
from .graded_ktheory import (column_degree_check, composition_check, duality_bookkeeping,
                             projective_oracle, solve_F_shifts)
from .hecke import CyclotomicAlgebra, HeckeAlgebra, involution_relation_check
from .instances import cell_grid, compositions, step_grid
from .lattice_quiver import upsilon_weight

CUTOFF_ENV = "LEVELRANK_CUTOFF"


@dataclass(frozen=True)
class Profile:
    name: str
    seed: int
    max_N: int
    max_e: int
    max_cells: int
    fock_es: Sequence[int]
    fock_nus: Sequence[Sequence[int]]
    corpus_size: int
    cutoff: int
    valid_modules: int
    corrupted_modules: int
    phi_instances: int
    ext_members: int
    upsilon_pairs: int
    hecke_triples: int
    cyclotomic_cases: Sequence[Sequence[int]]


PROFILES: Dict[str, Profile] = {
    "smoke": Profile("smoke", 7, 2, 2, 4, (2,), ((2,),), 20, 3, 10, 3, 2, 2, 50, 10, ((1, 2), (2, 2))),
    "desk": Profile("desk", 2024, 3, 3, 6, (2, 3), ((2,), (3,), (2, 2)), 24, 4, 50, 10, 5, 5, 500, 100,
                    ((1, 2), (1, 3), (2, 2))),
    "extended": Profile("extended", 99991, 3, 3, 8, (2, 3, 4), ((2,), (3,), (2, 2), (2, 1), (1, 1, 1)), 60, 5, 100, 20, 10, 10,
                        2000, 200, ((1, 2), (1, 3), (2, 2), (2, 3), (3, 2))),
}


def get_profile(name: str) -> Profile:
    """Look up a profile, applying a cutoff override from the environment."""
    from .errors import DomainError

    if name not in PROFILES:
        raise DomainError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}")
    profile = PROFILES[name]
    raw = os.environ.get(CUTOFF_ENV)
    if raw:
        try:
            cutoff = int(raw)
        except ValueError:
            raise DomainError(f"{CUTOFF_ENV} must be an integer, got {raw!r}") from None
        if cutoff < 2:
            raise DomainError(f"{CUTOFF_ENV} must be at least 2")
        profile = replace(profile, cutoff=cutoff)
    return profile


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    checked: int
    seconds: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {status}  {self.title}  ({self.checked} checks, {self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "checked": self.checked, "seconds": round(self.seconds, 3), "details": self.details}


def _timed(number: int, title: str, body: Callable[[], tuple]) -> CriterionResult:
    start = time.perf_counter()
    passed, checked, details = body()
    return CriterionResult(number, title, passed, checked, time.perf_counter() - start, details)


# ---------------------------------------------------------------------------
# level-rank Fock space


def criterion_1(p: Profile) -> CriterionResult:
    def body():
        failures, checked = [], 0
        for e in p.fock_es:
            for nu in p.fock_nus:
                for k in range(e):
                    rep = intertwining_check(k, nu, e, -(e + 1), e + 1)
                    checked += rep.checked
                    if not rep.ok:
                        failures.append({"e": e, "nu": list(nu), "k": k, **rep.to_json()})
        return not failures, checked, {"failures": failures}
    return _timed(1, "level-rank intertwining", body)


def criterion_2(p: Profile) -> CriterionResult:
    def body():
        failures, checked = [], 0
        for e in p.fock_es:
            for nu in p.fock_nus:
                rep = chevalley_check(nu, e, -(e + 1), e + 1, 200)
                checked += rep.checked
                if not rep.ok:
                    failures.append({"e": e, "nu": list(nu), **rep.to_json()})
        return not failures, checked, {"failures": failures}
    return _timed(2, "Chevalley relations on wedge truncations", body)


# ---------------------------------------------------------------------------
# centers, cells and graded Grothendieck groups


def _cells(p: Profile):
    return list(cell_grid(p.max_N, p.max_e, p.max_cells))


def criterion_3(p: Profile) -> CriterionResult:
    def body():
        failures, checked, by_dim = [], 0, 0
        for cell in _cells(p):
            rep = center_agreement(cell.mu, cell.v, cell.e)
            checked += 1
            by_dim += rep.hilbert == rep.by_dimension
            if not rep.ok:
                failures.append(rep.to_json())
        return not failures, checked, {
            "failures": failures,
            "hilbert_equals_cells_by_dimension": f"{by_dim}/{checked}",
        }
    return _timed(3, "center Hilbert series against cell Poincare polynomial", body)


def criterion_4(p: Profile) -> CriterionResult:
    def body():
        failures, checked = [], 0
        for st in step_grid(p.max_N, p.max_e, p.max_cells):
            rep = decomposition_check(st.mu, st.k, st.v, st.e)
            checked += 1
            if not rep["identity"] or rep.get("splitting") is False:
                failures.append({"instance": st.label(), **rep})
        return not failures, checked, {"failures": failures}
    return _timed(4, "graded decomposition of Poincare polynomials", body)


def _nus(N: int) -> List[tuple]:
    return [nu for l in range(1, N + 1) for nu in compositions(N, l, True)]


def criterion_5(p: Profile) -> CriterionResult:
    def body():
        failures, checked = [], 0
        for mirror in (False, True):
            for st in step_grid(p.max_N, p.max_e, p.max_cells, mirror=mirror):
                for nu in _nus(sum(st.mu)):
                    comp = composition_check(st.mu, st.k, nu, st.v)
                    sol = solve_F_shifts(st.mu, st.k, nu, st.v)
                    cols = column_degree_check(st.mu, st.k, nu, st.v)
                    checked += 1
                    if not (comp["ungraded_identity"] and comp["unbalanced_graded_identity"]
                            and sol.feasible and cols):
                        failures.append({"instance": st.label(), "nu": list(nu), "composition": comp,
                                         "shifts": sol.to_json(), "column_degrees": cols})
                checked += 1
                if not projective_oracle(st.mu, st.k, st.v):
                    failures.append({"instance": st.label(), "projective_oracle": False})
        return not failures, checked, {"failures": failures}
    return _timed(5, "composition identity and balanced shifts", body)


def criterion_6(p: Profile) -> CriterionResult:
    def body():
        failures, checked = [], 0
        for st in step_grid(p.max_N, p.max_e, p.max_cells):
            small = parabolic(st.mu_prime, st.e, st.convention)
            x = st.v * small.longest
            for nu in _nus(sum(st.mu)):
                checked += 1
                book = duality_bookkeeping(st.mu, st.k, nu, st.v)
                if not book["ok"]:
                    failures.append({"instance": st.label(), "nu": list(nu), "bookkeeping": book})
                if is_nu_dominant(small.weight(x), nu):
                    checked += 1
                    rep = index_set_identities(st.mu, st.mu_prime, nu, x, st.convention)
                    if not rep["all_equal"]:
                        failures.append({"instance": st.label(), "nu": list(nu), "identities": rep})
        return not failures, checked, {"failures": failures}
    return _timed(6, "index-set identities", body)


# ---------------------------------------------------------------------------
# quadratic duality


@dataclass
class CorpusData:
    corpus: List[qd.Presentation]
    koszul: List[qd.Presentation]


def _corpus(p: Profile) -> CorpusData:
    corpus = qd.random_corpus(p.seed, p.corpus_size)
    koszul = []
    for pres in corpus:
        alg = qd.expand(pres, p.cutoff + 2)
        if alg.finite and qd.koszul_resolution_check(alg, p.cutoff).ok:
            koszul.append(pres)
    return CorpusData(corpus, koszul)


def criterion_7(p: Profile, data: Optional[CorpusData] = None) -> CriterionResult:
    def body():
        d = data or _corpus(p)
        failures, checked = [], 0
        for i, pres in enumerate(d.corpus):
            checked += 1
            dd = qd.double_dual_check(pres, p.cutoff)
            if not dd.ok:
                failures.append({"algebra": i, "double_dual": dd.__dict__})
            for r in range(1, len(pres.vertices) + 1):
                for keep in itertools.combinations(pres.vertices, r):
                    checked += 1
                    rep = qd.check_dual_truncation(pres, keep, p.cutoff)
                    if not rep.ok:
                        failures.append({"algebra": i, "truncation": rep.to_json()})
        for pres in d.koszul:
            checked += 1
            rep = qd.hilbert_test(qd.expand(pres, p.cutoff), qd.expand(qd.quadratic_dual(pres), p.cutoff),
                                  p.cutoff)
            if not rep.ok:
                failures.append({"algebra": pres.to_json(), "hilbert_failing_degree": rep.failing_degree})
        for name, pres in qd.radical_square_zero_family().items():
            checked += 1
            rep = qd.koszul_resolution_check(qd.expand(pres, 4), 4)
            if not rep.ok:
                failures.append({"radical_square_zero": name, "report": rep.to_json()})
        enough = len(d.corpus) >= 20
        return enough and not failures, checked, {
            "corpus": len(d.corpus), "koszul_verified": len(d.koszul), "failures": failures}
    return _timed(7, "quadratic duality corpus", body)


def _with_degree_two(corpus: Sequence[qd.Presentation], cutoff: int) -> List[qd.Presentation]:
    return [pres for pres in corpus if qd.expand(pres, 2).graded_dims(2)[2] > 0
            and qd.expand(pres, cutoff + 2).finite]


def criterion_8(p: Profile, data: Optional[CorpusData] = None) -> CriterionResult:
    def body():
        d = data or _corpus(p)
        rng = random.Random(p.seed + 8)
        failures, checked = [], 0
        members = d.koszul
        for i in range(p.valid_modules):
            pres = members[i % len(members)]
            alg = qd.expand(pres, p.cutoff + 2)
            module = qd.random_module(qd.expand(qd.quadratic_dual(pres), p.cutoff), rng)
            checked += 1
            if not module.is_module() or linear_complex_violations(alg, module):
                failures.append({"valid_module": i, "algebra": pres.to_json()})
        sources = _with_degree_two(d.corpus, p.cutoff) + [qd.path_algebra([1, 2, 3], [("a", 1, 2), ("b", 2, 3)]),
                                                          qd.commutative_square()]
        corrupted, attempts = 0, 0
        while corrupted < p.corrupted_modules and attempts < 50 * p.corrupted_modules:
            pres = sources[attempts % len(sources)]
            attempts += 1
            bad = qd.relation_free_module(qd.quadratic_dual(pres), rng)
            if bad is None:
                continue
            corrupted += 1
            checked += 1
            if not linear_complex_violations(qd.expand(pres, p.cutoff + 2), bad):
                failures.append({"corrupted_module": corrupted, "algebra": pres.to_json()})
        if corrupted < p.corrupted_modules:
            failures.append({"corrupted_modules_found": corrupted})
        squares = 0
        for pres in members:
            if squares >= p.phi_instances:
                break
            size = rng.randint(1, len(pres.vertices))
            keep = tuple(sorted(rng.sample(list(pres.vertices), size)))
            rep = qd.phi_square_check(pres, keep, rng)
            squares += 1
            checked += 1
            if not rep.ok:
                failures.append({"phi_square": rep.__dict__, "algebra": pres.to_json()})
        if squares < p.phi_instances:
            failures.append({"phi_squares_run": squares})
        return not failures, checked, {"failures": failures, "corrupted_attempts": attempts}
    return _timed(8, "linear complexes", body)


def linear_complex_violations(alg: qd.PathQuotient, module: qd.GradedModule) -> List[int]:
    return qd.linear_complex(alg, module).square_violations()


def criterion_9(p: Profile, data: Optional[CorpusData] = None) -> CriterionResult:
    def body():
        d = data or _corpus(p)
        ranked = sorted(d.koszul, key=lambda pres: -qd.expand(pres, p.cutoff + 2).total_dim())
        chosen = ranked[:p.ext_members]
        failures = []
        for pres in chosen:
            rep = qd.ext_agreement(pres, p.cutoff)
            if not rep.ok:
                failures.append({"algebra": pres.to_json(), "report": rep.to_json()})
        ok = not failures and len(chosen) >= p.ext_members
        return ok, len(chosen), {"failures": failures, "members": len(chosen)}
    return _timed(9, "Ext algebra against quadratic dual", body)


# ---------------------------------------------------------------------------
# Hecke algebras and the level change


def criterion_10(p: Profile) -> CriterionResult:
    def body():
        rng = random.Random(p.seed + 10)
        A = HeckeAlgebra(3)
        failures, checked = [], 0
        for i in range(p.hecke_triples):
            x, y, z = (A.random_element(rng) for _ in range(3))
            checked += 1
            if (x * y) * z != x * (y * z):
                failures.append({"associativity": i})
        checked += 1
        if A.T(1) * A.T(2) * A.T(1) != A.T(2) * A.T(1) * A.T(2):
            failures.append({"braid": False})
        for l, d in p.cyclotomic_cases:
            alg = CyclotomicAlgebra(d, [Fraction(3 + 2 * i) for i in range(l)])
            expected = l ** d * _factorial(d)
            checked += 1
            if alg.dimension() != expected or alg.relation_residuals():
                failures.append({"cyclotomic": [l, d], "dimension": alg.dimension(), "expected": expected})
        for d in (2, 3):
            checked += 1
            rep = involution_relation_check(HeckeAlgebra(d))
            if rep["homomorphism"]:
                failures.append({"involution": d, "failing": rep["homomorphism"]})
        return not failures, checked, {"failures": failures}
    return _timed(10, "Hecke algebra checks", body)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def criterion_11(p: Profile) -> CriterionResult:
    def body():
        rng = random.Random(p.seed + 11)
        failures = []
        for i in range(p.upsilon_pairs):
            N = rng.randint(2, 4)
            e = rng.choice((2, 3))
            k = rng.randrange(e)
            lam = tuple(rng.randint(-2 * e, 2 * e) for _ in range(N))
            if rng.random() < 0.5:
                lam = antidominant_rep(lam, e)[0]
            w = random_element(N, 6, rng, max_shift=1)
            ok = upsilon_equivariance_check(lam, w, e, k)
            if is_antidominant(lam, e) and not is_antidominant(upsilon_weight(lam, e, k), e + 1):
                ok = False
            if not ok:
                failures.append({"lambda": list(lam), "w": w.to_json(), "e": e, "k": k})
        return not failures, p.upsilon_pairs, {"failures": failures}
    return _timed(11, "level change equivariance", body)


CRITERIA: Dict[int, Callable] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11,
}


def run(profile: Profile, only: Optional[Sequence[int]] = None) -> List[CriterionResult]:
    numbers = sorted(CRITERIA) if only is None else list(only)
    data = _corpus(profile) if any(n in (7, 8, 9) for n in numbers) else None
    results = []
    for n in numbers:
        fn = CRITERIA[n]
        results.append(fn(profile, data) if n in (7, 8, 9) else fn(profile))
    return results


def report(profile: Profile, results: Sequence[CriterionResult]) -> dict:
    return {"profile": profile.name, "seed": profile.seed, "cutoff": profile.cutoff,
            "passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}
