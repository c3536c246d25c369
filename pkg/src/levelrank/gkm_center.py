"""Deformed centers of truncated blocks as congruence algebras on moment graphs.

The base ring is polynomial in ``tau_1..tau_N`` and ``kappa``.  Every
edge label is a combination of ``h_r = tau_{r+1} - tau_r`` (``1 <= r < N``)
and ``c = kappa - e``, so computations use the variables
``h_1, ..., h_{N-1}, c``.  The remaining direction ``tau_1`` occurs in no
label and contributes a free polynomial factor, which is restored when
raw Hilbert series are reported.  ``q`` counts polynomial degree, that is
half the cohomological degree.

Two moment graphs are available on the vertex set ``^vJ_mu``:

* ``"reflections"`` (default): ``w`` and ``t w`` are joined for every affine
  reflection ``t`` with label the corresponding affine root;
* ``"simple"``: only ``w`` and ``s_r w`` are joined, with label ``h_r``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .affine_weyl import (AffinePermutation, ParabolicData, coset_reps, parabolic, s,
                          shifted_composition)
from .errors import DomainError, VerificationError
from .exact import RowReducer, kernel, rank, span_basis
from .laurent import Laurent

Mono = Tuple[int, ...]
Poly = Dict[Mono, Fraction]
LinearForm = Tuple[Fraction, ...]


# --------------------------------------------------------------------------
# Polynomials


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> Tuple[Mono, ...]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return tuple(sorted(out, reverse=True))


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def linear_poly(form: LinearForm) -> Poly:
    n = len(form)
    out = {}
    for i, c in enumerate(form):
        if c:
            m = [0] * n
            m[i] = 1
            out[tuple(m)] = Fraction(c)
    return out


@lru_cache(maxsize=None)
def _restriction(form: LinearForm, mono: Mono) -> Tuple[Tuple[Mono, Fraction], ...]:
    """Image of ``mono`` in the quotient by ``form``: eliminate the last variable
    with nonzero coefficient.  ``f`` is divisible by ``form`` iff its image is zero."""
    p = max(i for i, c in enumerate(form) if c)
    sub = {}
    for i, c in enumerate(form):
        if c and i != p:
            m = [0] * len(form)
            m[i] = 1
            sub[tuple(m)] = -Fraction(c) / Fraction(form[p])
    rest = list(mono)
    power = rest[p]
    rest[p] = 0
    out: Poly = {tuple(rest): Fraction(1)}
    for _ in range(power):
        out = poly_mul(out, sub)
    return tuple(sorted(out.items()))


def poly_str(p: Poly, names: Sequence[str]) -> str:
    if not p:
        return "0"
    parts = []
    for m, c in sorted(p.items(), reverse=True):
        mon = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e)
        coef = str(c)
        parts.append(mon if (coef == "1" and mon) else (f"{coef}*{mon}" if mon else coef))
    return " + ".join(parts)


# --------------------------------------------------------------------------
# Moment graphs


def variable_names(N: int) -> List[str]:
    return [f"h{r}" for r in range(1, N)] + ["c"]


def tau_difference(i: int, j: int, N: int) -> List[Fraction]:
    """``tau_j - tau_i`` in the variables ``h_1..h_{N-1}, c`` (``1 <= i, j <= N``)."""
    out = [Fraction(0)] * N
    lo, hi, sign = (i, j, 1) if i <= j else (j, i, -1)
    for r in range(lo, hi):
        out[r - 1] += sign
    return out


def reflection_label(i: int, j: int, m: int, N: int) -> LinearForm:
    """Root of the reflection exchanging positions ``i < j`` with shift ``m``:
    ``tau_j - tau_i + m c``."""
    out = tau_difference(i, j, N)
    out[N - 1] += m
    return tuple(out)


def simple_label(r: int, N: int) -> LinearForm:
    if r == 0:
        # h_0 = tau_N - tau_1 - kappa + e = tau_N - tau_1 - c
        return reflection_label(1, N, -1, N)
    return reflection_label(r, r + 1, 0, N)


def reflection_between(lam: Sequence[int], other: Sequence[int], e: int) -> Optional[Tuple[int, int, int]]:
    """``(i, j, m)`` (1-based, ``i < j``) with ``other_i = lam_j + m e`` and
    ``other_j = lam_i - m e`` and all other entries equal, if any."""
    diff = [k for k in range(len(lam)) if lam[k] != other[k]]
    if len(diff) != 2:
        return None
    a, b = diff
    d = other[a] - lam[b]
    if d % e or other[b] != lam[a] - d:
        return None
    return a + 1, b + 1, d // e


@dataclass
class MomentGraph:
    N: int
    e: int
    vertices: List[AffinePermutation]
    weights: List[Tuple[int, ...]]
    edges: List[Tuple[int, int, LinearForm]]
    mode: str

    @property
    def nvars(self) -> int:
        return self.N

    def components(self) -> List[List[int]]:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _ in self.edges:
            parent[find(a)] = find(b)
        groups: Dict[int, List[int]] = {}
        for i in range(len(self.vertices)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def to_json(self) -> dict:
        names = variable_names(self.N)
        return {
            "vertices": [{"w": w.to_json(), "weight": list(lam)} for w, lam in zip(self.vertices, self.weights)],
            "edges": [[a, b, poly_str(linear_poly(L), names)] for a, b, L in self.edges],
            "mode": self.mode,
        }


def moment_graph(data: ParabolicData, v: AffinePermutation, mode: str = "reflections") -> MomentGraph:
    """Moment graph on ``^vJ_mu`` for the stabilizer data ``data``."""
    if data.sign != "negative":
        raise DomainError("moment graphs use the negative action")
    verts = coset_reps(data, v, "min").elements
    if not verts:
        raise DomainError("empty vertex set")
    weights = [data.weight(w) for w in verts]
    N, e = data.N, data.level
    edges = []
    if mode == "reflections":
        for a, b in itertools.combinations(range(len(verts)), 2):
            refl = reflection_between(weights[a], weights[b], e)
            if refl is not None:
                edges.append((a, b, reflection_label(*refl, N)))
    elif mode == "simple":
        index = {lam: i for i, lam in enumerate(weights)}
        for a, lam in enumerate(weights):
            for r in range(N):
                b = index.get(s(r, N).act(lam, e))
                if b is not None and a < b:
                    edges.append((a, b, simple_label(r, N)))
    else:
        raise DomainError(f"unknown moment graph mode {mode!r}")
    return MomentGraph(N, e, verts, weights, edges, mode)


@dataclass(frozen=True)
class _RegularData(ParabolicData):
    """Trivial stabilizer: the point ``(0, 1, ..., N-1)`` at level ``N``.

    Edge labels depend only on the reflection, not on the level, so this
    graph carries the same labels as the parabolic graphs at any level.
    """

    def __init__(self, N: int):
        object.__setattr__(self, "comp", (1,) * N)
        object.__setattr__(self, "level", N)
        object.__setattr__(self, "sign", "negative")
        object.__setattr__(self, "convention", "standard")

    @property
    def point(self):
        return tuple(range(self.N))

    @property
    def generators(self):
        return ()


def regular_moment_graph(N: int, v: AffinePermutation, mode: str = "reflections") -> MomentGraph:
    """Moment graph on the whole interval ``{w <= v}``."""
    return moment_graph(_RegularData(N), v, mode)


# --------------------------------------------------------------------------
# Congruence algebras


@dataclass
class CenterAlgebra:
    graph: MomentGraph
    cutoff: int
    bases: Dict[int, List[Dict]] = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return self.graph.nvars

    def dims(self) -> List[int]:
        return [len(self.bases[d]) for d in range(self.cutoff + 1)]

    def raw_hilbert(self) -> List[int]:
        """Dimensions with the free ``tau_1`` factor restored, up to the cutoff."""
        red = self.dims()
        return [sum(red[: d + 1]) for d in range(self.cutoff + 1)]

    def normalized_hilbert(self) -> Laurent:
        """Hilbert series of the quotient by the ideal generated by the
        diagonal copies of the variables."""
        out = {}
        for d in range(self.cutoff + 1):
            if d == 0:
                out[0] = len(self.bases[0])
                continue
            products = []
            for z in self.bases[d - 1]:
                for i in range(self.nvars):
                    products.append(shift_vector(z, i, self.nvars))
            out[d] = len(self.bases[d]) - rank(products)
        return Laurent(out)

    def element(self, vec: Dict) -> List[Poly]:
        polys: List[Poly] = [dict() for _ in self.graph.vertices]
        for (a, m), c in vec.items():
            polys[a][m] = c
        return polys

    def contains(self, polys: Sequence[Poly]) -> bool:
        """Exact membership test through the edge congruences."""
        for a, b, L in self.graph.edges:
            diff = dict(polys[a])
            for m, c in polys[b].items():
                diff[m] = diff.get(m, 0) - c
            image: Poly = {}
            for m, c in diff.items():
                if c:
                    for m2, c2 in _restriction(L, m):
                        image[m2] = image.get(m2, 0) + c * c2
            if any(x != 0 for x in image.values()):
                return False
        return True

    def closure_check(self) -> bool:
        """Products of basis elements with total degree within the cutoff stay inside."""
        for d1 in range(self.cutoff + 1):
            for d2 in range(d1, self.cutoff + 1 - d1):
                red = RowReducer()
                for z in self.bases[d1 + d2]:
                    red.add(z)
                for x in self.bases[d1]:
                    for y in self.bases[d2]:
                        if not red.contains(multiply_vectors(x, y)):
                            return False
        return True

    def degree_zero_check(self) -> bool:
        comps = self.graph.components()
        expected = [{(a, (0,) * self.nvars): Fraction(1) for a in comp} for comp in comps]
        red = RowReducer()
        for z in self.bases[0]:
            red.add(z)
        return len(self.bases[0]) == len(comps) and all(red.contains(z) for z in expected)

    def to_json(self) -> dict:
        names = variable_names(self.graph.N)
        return {
            "graph": self.graph.to_json(),
            "cutoff": self.cutoff,
            "variables": names,
            "dims": self.dims(),
            "raw_hilbert": self.raw_hilbert(),
            "normalized_hilbert": [self.normalized_hilbert().coeffs.get(d, 0) for d in range(self.cutoff + 1)],
            "bases": {str(d): [[poly_str(p, names) for p in self.element(z)] for z in self.bases[d]]
                      for d in range(min(self.cutoff, 2) + 1)},
        }


def shift_vector(z: Dict, var: int, nvars: int) -> Dict:
    out = {}
    for (a, m), c in z.items():
        m2 = list(m)
        m2[var] += 1
        out[(a, tuple(m2))] = c
    return out


def multiply_vectors(x: Dict, y: Dict) -> Dict:
    px: Dict[int, Poly] = {}
    py: Dict[int, Poly] = {}
    for (a, m), c in x.items():
        px.setdefault(a, {})[m] = c
    for (a, m), c in y.items():
        py.setdefault(a, {})[m] = c
    out = {}
    for a in px.keys() & py.keys():
        for m, c in poly_mul(px[a], py[a]).items():
            out[(a, m)] = c
    return out


def congruence_basis(graph: MomentGraph, degree: int) -> List[Dict]:
    """Basis of the degree ``degree`` part: tuples ``(z_w)`` with
    ``z_a - z_b`` divisible by the label of every edge ``(a, b)``."""
    monos = monomials(graph.nvars, degree)
    keys = [(a, m) for a in range(len(graph.vertices)) for m in monos]
    incident: Dict[int, List[Tuple[int, int, LinearForm]]] = {}
    for ei, (a, b, L) in enumerate(graph.edges):
        incident.setdefault(a, []).append((ei, 1, L))
        incident.setdefault(b, []).append((ei, -1, L))
    columns = []
    for a, m in keys:
        col: Dict = {}
        for ei, sign, L in incident.get(a, []):
            for m2, c in _restriction(L, m):
                k = (ei, m2)
                v = col.get(k, 0) + sign * c
                if v:
                    col[k] = v
                else:
                    col.pop(k, None)
        columns.append(col)
    rels = kernel(columns)
    return span_basis({keys[j]: c for j, c in rel.items()} for rel in rels)


def build_center_on_graph(graph: MomentGraph, cutoff: int) -> CenterAlgebra:
    if cutoff < 0:
        raise DomainError("cutoff must be nonnegative")
    alg = CenterAlgebra(graph, cutoff)
    for d in range(cutoff + 1):
        alg.bases[d] = congruence_basis(graph, d)
    return alg


def default_cutoff(data: ParabolicData, v: AffinePermutation) -> int:
    return max(w.length for w in coset_reps(data, v, "min").elements) + 1


def build_center(mu: Sequence[int], v: AffinePermutation, cutoff: Optional[int] = None,
                 e: Optional[int] = None, mode: str = "reflections",
                 convention: str = "standard") -> CenterAlgebra:
    data = parabolic(mu, e, convention)
    graph = moment_graph(data, v, mode)
    return build_center_on_graph(graph, default_cutoff(data, v) if cutoff is None else cutoff)


# --------------------------------------------------------------------------
# Cells


def minimal_bound(data: ParabolicData, v: AffinePermutation) -> AffinePermutation:
    return data.min_rep(v)


def cell_poincare(mu: Sequence[int], v: AffinePermutation, e: Optional[int] = None,
                  convention: str = "standard") -> Laurent:
    """``sum_{w in ^vJ_mu} q^{l(v_min) - l(w)}`` with ``v_min`` the shortest
    element of ``v W_mu``."""
    data = parabolic(mu, e, convention)
    top = minimal_bound(data, v).length
    return Laurent.from_exponents(top - w.length for w in coset_reps(data, v, "min").elements)


def cell_lengths(mu: Sequence[int], v: AffinePermutation, e: Optional[int] = None,
                 convention: str = "standard") -> Laurent:
    """``sum_{w in ^vJ_mu} q^{l(w)}``: cells counted by dimension."""
    data = parabolic(mu, e, convention)
    return Laurent.from_exponents(w.length for w in coset_reps(data, v, "min").elements)


@dataclass
class AgreementReport:
    label: str
    hilbert: Laurent
    poincare: Laurent
    by_dimension: Laurent

    @property
    def ok(self) -> bool:
        return self.hilbert == self.poincare

    def to_json(self) -> dict:
        return {"instance": self.label, "ok": self.ok, "hilbert": self.hilbert.to_json(),
                "cell_poincare": self.poincare.to_json(), "cells_by_dimension": self.by_dimension.to_json()}


def center_agreement(mu: Sequence[int], v: AffinePermutation, e: Optional[int] = None,
                     mode: str = "reflections", convention: str = "standard") -> AgreementReport:
    data = parabolic(mu, e, convention)
    alg = build_center(mu, v, None, data.level, mode, convention)
    label = f"e={data.level} mu={tuple(mu)} v={v.word_string()} mode={mode}"
    return AgreementReport(label, alg.normalized_hilbert(), cell_poincare(mu, v, data.level, convention),
                           cell_lengths(mu, v, data.level, convention))


# --------------------------------------------------------------------------
# Invariants under the stabilizer


def invariants_check(mu: Sequence[int], v: AffinePermutation, e: Optional[int] = None,
                     cutoff: Optional[int] = None, mode: str = "reflections",
                     convention: str = "standard") -> Dict[str, object]:
    """``W_mu``-invariants of the regular congruence algebra on ``{w <= v}``
    compared degreewise with the congruence algebra on ``^vJ_mu``.

    ``v`` must be a longest representative so that the interval is a union
    of right cosets.
    """
    data = parabolic(mu, e, convention)
    if not data.is_max_rep(v):
        raise DomainError("v must be a longest coset representative")
    small = moment_graph(data, v, mode)
    reg = regular_moment_graph(data.N, v, mode)
    if cutoff is None:
        cutoff = default_cutoff(data, v)
    index = {w: i for i, w in enumerate(reg.vertices)}
    if set(index) != {w * x for w in small.vertices for x in data.group}:
        raise VerificationError("interval is not a union of cosets")
    target = {w: i for i, w in enumerate(small.vertices)}
    per_degree = []
    ok = True
    for d in range(cutoff + 1):
        big = congruence_basis(reg, d)
        # invariance: z_{w x} = z_w for generators x of the stabilizer
        monos = monomials(reg.nvars, d)
        columns = []
        for z in big:
            col = {}
            for w, i in index.items():
                for r in data.generators:
                    j = index[w.times_simple(r)]
                    for m in monos:
                        val = z.get((i, m), 0) - z.get((j, m), 0)
                        if val:
                            col[(i, r, m)] = val
            columns.append(col)
        inv = []
        for rel in kernel(columns):
            vec = {}
            for t, c in rel.items():
                for key, val in big[t].items():
                    vec[key] = vec.get(key, 0) + c * val
            inv.append({k: v_ for k, v_ in vec.items() if v_})
        # restrict to shortest representatives
        restricted = []
        for z in inv:
            out = {}
            for (i, m), c in z.items():
                w = reg.vertices[i]
                if w in target:
                    out[(target[w], m)] = c
            restricted.append(out)
        direct = congruence_basis(small, d)
        same = len(span_basis(restricted)) == len(direct) == len(inv) and \
            rank(list(restricted) + list(direct)) == len(direct)
        ok &= same
        per_degree.append({"degree": d, "invariants": len(inv), "direct": len(direct), "equal": same})
    return {"ok": ok, "degrees": per_degree}


# --------------------------------------------------------------------------
# Splitting over the smaller center


def embed_smaller(mu: Sequence[int], mu_prime: Sequence[int], v: AffinePermutation, e: int,
                  convention: str, z: Dict, small: MomentGraph, big: MomentGraph) -> Dict:
    """Pull an element of the ``mu'`` center back to the ``mu`` vertex set."""
    data_p = parabolic(mu_prime, e, convention)
    index = {lam: i for i, lam in enumerate(small.weights)}
    out = {}
    for a, w in enumerate(big.vertices):
        b = index[data_p.weight(w)]
        for (i, m), c in z.items():
            if i == b:
                out[(a, m)] = c
    return out


def decomposition_check(mu: Sequence[int], k: int, v: AffinePermutation, e: Optional[int] = None,
                        convention: Optional[str] = None, splitting: bool = True,
                        max_cells: int = 6) -> dict:
    """Poincare identity ``P_mu = (1 + ... + q^m) P_mu'`` for ``mu_k = 1`` and, on
    small instances, generators of the ``mu`` center over the ``mu'`` center."""
    from .affine_weyl import convention_for
    e = len(mu) if e is None else e
    convention = convention_for(k) if convention is None else convention
    mu = tuple(mu)
    if mu[(k - 1) % e] != 1:
        raise DomainError("the decomposition needs mu_k = 1")
    mu_p = shifted_composition(mu, k)
    m = mu[k % e]
    data = parabolic(mu, e, convention)
    data_p = parabolic(mu_p, e, convention)
    if not set(data.group) <= set(data_p.group):
        raise DomainError("stabilizers are not nested")
    if not data_p.is_max_rep(v):
        raise DomainError("v must be a longest representative for mu'")
    p = cell_poincare(mu, v, e, convention)
    pp = cell_poincare(mu_p, v, e, convention)
    factor = Laurent.q_integer(m + 1, balanced=False, step=1)
    report = {"poincare": p.to_json(), "poincare_prime": pp.to_json(), "m": m,
              "identity": p == factor * pp}
    cells = len(coset_reps(data, v, "min"))
    if splitting and cells <= max_cells:
        big = moment_graph(data, v)
        small = moment_graph(data_p, v)
        cutoff = default_cutoff(data, v)
        zb = {d: congruence_basis(big, d) for d in range(cutoff + 1)}
        zs = {d: congruence_basis(small, d) for d in range(cutoff + 1)}
        gens = {}
        for d in range(cutoff + 1):
            products = []
            for j in range(1, d + 1):
                for y in zs[j]:
                    yb = embed_smaller(mu, mu_p, v, e, convention, y, small, big)
                    for z in zb[d - j]:
                        products.append(multiply_vectors(yb, z))
            gens[d] = len(zb[d]) - rank(products)
        got = Laurent(gens)
        report["generators"] = got.to_json()
        report["splitting"] = got == factor
    return report


def res_ind_characters(m: int, character: Laurent) -> Dict[str, Laurent]:
    """Graded characters under restriction and induction for ``mu_{k+1} = m``."""
    res = character.shift(-m)
    ind = Laurent.q_integer(m + 1, balanced=False, step=2) * character
    comp = ind.shift(-m)
    return {"res": res, "ind": ind, "res_ind": comp,
            "expected": Laurent.q_integer(m + 1, balanced=True, step=2) * character}
