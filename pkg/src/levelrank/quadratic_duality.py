"""Graded quiver algebras over a basic semisimple degree-zero part.

An algebra is presented by a quiver (vertices are the idempotents, arrows
span the degree-one bimodule) and homogeneous relations of degree at least
two.  Paths are words read left to right: the word ``(a, b)`` is the
product ``a * b`` and needs ``dst(a) == src(b)``.  A path from ``s`` to
``t`` lies in ``e_s A e_t``, so ``A e_t`` is spanned by the paths ending at
``t`` and left modules are acted on by prepending arrows.  An arrow
``a: s -> t`` therefore sends ``e_t M`` to ``e_s M``.

The dual generator of ``a: s -> t`` is ``a*: t -> s``.  Functionals pair
with tensors in reversed order, ``(f (x) g)(m (x) n) = f(n) g(m)``, so the
dual word of ``(a, b)`` is ``(b*, a*)``.  Everything is exact over the
rationals.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError, VerificationError
from .exact import (RowReducer, add_scaled, clean, fraction_str, kernel,
                    orthogonal_complement, parse_fraction, same_span, scale)

Word = Tuple[str, ...]
PathKey = Tuple[int, int, Tuple[int, ...]]


def dual_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


# ---------------------------------------------------------------------------
# bimodules over the base


def _dual_label(label):
    if isinstance(label, tuple) and len(label) == 2 and label[0] == "*":
        return label[1]
    return ("*", label)


class GradedBimodule:
    """Chosen basis labels for every block ``(left vertex, right vertex, degree)``."""

    def __init__(self, blocks: Dict[Tuple[Hashable, Hashable, int], Sequence]):
        self.blocks = {k: tuple(v) for k, v in blocks.items() if len(v)}

    def dim(self, left, right, degree: Optional[int] = None) -> int:
        return sum(len(v) for (l, r, d), v in self.blocks.items()
                   if l == left and r == right and (degree is None or d == degree))

    def dims(self) -> Dict[Tuple[Hashable, Hashable, int], int]:
        return {k: len(v) for k, v in self.blocks.items()}

    @property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.blocks.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedBimodule):
            return NotImplemented
        return {k: set(v) for k, v in self.blocks.items()} == \
            {k: set(v) for k, v in other.blocks.items()}


def star_dual(module: GradedBimodule) -> GradedBimodule:
    """Blockwise linear dual: the ``(l, r, d)`` block is dual to the ``(r, l, -d)`` block."""
    out: Dict = {}
    for (left, right, deg), labels in module.blocks.items():
        out[(right, left, -deg)] = tuple(_dual_label(x) for x in labels)
    return GradedBimodule(out)


def tensor_over_base(first: GradedBimodule, second: GradedBimodule) -> GradedBimodule:
    """``first (x)_B second``: only labels meeting at a common vertex survive."""
    out: Dict = {}
    for (l, m, d1), xs in first.blocks.items():
        for (m2, r, d2), ys in second.blocks.items():
            if m != m2:
                continue
            out.setdefault((l, r, d1 + d2), []).extend((x, y) for x in xs for y in ys)
    return GradedBimodule(out)


def reversal_pairing_check(first: GradedBimodule, second: GradedBimodule) -> bool:
    """The label map ``(m (x) n)* -> n* (x) m*`` is a blockwise bijection
    between ``(first (x) second)*`` and ``second* (x) first*``."""
    lhs = star_dual(tensor_over_base(first, second))
    rhs = tensor_over_base(star_dual(second), star_dual(first))
    if lhs.dims() != rhs.dims():
        return False
    for key, labels in lhs.blocks.items():
        mapped = {(_dual_label(x[1][1]), _dual_label(x[1][0])) for x in labels}
        if mapped != set(rhs.blocks.get(key, ())):
            return False
    return True


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Arrow:
    name: str
    src: Hashable
    dst: Hashable


class Presentation:
    """Quiver with homogeneous relations, each a dict from words of arrow names to coefficients."""

    def __init__(self, vertices: Sequence, arrows: Sequence[Arrow],
                 relations: Iterable[Dict[Sequence[str], object]] = ()):
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise DomainError("a presentation needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise DomainError("duplicate vertex labels")
        self.arrows = tuple(arrows)
        self._by_name = {a.name: a for a in self.arrows}
        if len(self._by_name) != len(self.arrows):
            raise DomainError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.src not in vset or a.dst not in vset:
                raise DomainError(f"arrow {a.name} has an endpoint outside the vertex set")
        rels = []
        for i, rel in enumerate(relations):
            merged: Dict[Word, Fraction] = {}
            for word, c in rel.items():
                word = tuple(word)
                merged[word] = merged.get(word, Fraction(0)) + Fraction(c)
            merged = clean(merged)
            if not merged:
                continue
            blocks = set()
            for word in merged:
                if len(word) < 2:
                    raise DomainError(f"relation {i} has a term of degree {len(word)} < 2")
                blocks.add(self.path_ends(word))
            if len(blocks) > 1:
                raise DomainError(f"relation {i} mixes idempotent blocks {sorted(map(str, blocks))}")
            degrees = {len(w) for w in merged}
            if len(degrees) > 1:
                raise DomainError(f"relation {i} is not homogeneous")
            rels.append(merged)
        self.relations = tuple(rels)

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise DomainError(f"unknown arrow {name!r}") from None

    def path_ends(self, word: Sequence[str]) -> Tuple[Hashable, Hashable]:
        arrows = [self.arrow(n) for n in word]
        for a, b in zip(arrows, arrows[1:]):
            if a.dst != b.src:
                raise DomainError(f"path {'.'.join(word)} is not composable at {a.name}.{b.name}")
        return arrows[0].src, arrows[-1].dst

    @property
    def is_quadratic(self) -> bool:
        return all(len(w) == 2 for r in self.relations for w in r)

    def composable_pairs(self) -> List[Word]:
        return [(a.name, b.name) for a in self.arrows for b in self.arrows if a.dst == b.src]

    def generator_bimodule(self) -> GradedBimodule:
        blocks: Dict = {}
        for a in self.arrows:
            blocks.setdefault((a.src, a.dst, 1), []).append(a.name)
        return GradedBimodule(blocks)

    def relation_bimodule(self) -> GradedBimodule:
        blocks: Dict = {}
        for i, r in enumerate(self.relations):
            src, dst = self.path_ends(next(iter(r)))
            blocks.setdefault((src, dst, len(next(iter(r)))), []).append(i)
        return GradedBimodule(blocks)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "dst": a.dst} for a in self.arrows],
            "relations": [[{"path": list(w), "coeff": fraction_str(c)} for w, c in sorted(r.items())]
                          for r in self.relations],
        }

    @classmethod
    def from_json(cls, doc) -> "Presentation":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            arrows = [Arrow(str(a["name"]), a["src"], a["dst"]) for a in doc.get("arrows", [])]
            rels = []
            for i, rel in enumerate(doc.get("relations", [])):
                terms: Dict[Word, Fraction] = {}
                for term in rel:
                    path = term["path"]
                    if isinstance(path, str):
                        path = path.replace(".", " ").split()
                    word = tuple(str(x) for x in path)
                    terms[word] = terms.get(word, Fraction(0)) + parse_fraction(term.get("coeff", 1))
                rels.append(terms)
            return cls(doc["vertices"], arrows, rels)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed presentation: {exc!r}") from None

    def __repr__(self) -> str:
        return f"Presentation(vertices={list(self.vertices)}, arrows={len(self.arrows)}, relations={len(self.relations)})"


def radical_square_zero(vertices: Sequence, arrows: Sequence[Tuple[str, Hashable, Hashable]]) -> Presentation:
    """Path algebra modulo every path of length two."""
    arr = [Arrow(n, s, t) for n, s, t in arrows]
    rels = [{(a.name, b.name): 1} for a in arr for b in arr if a.dst == b.src]
    return Presentation(vertices, arr, rels)


def path_algebra(vertices: Sequence, arrows: Sequence[Tuple[str, Hashable, Hashable]]) -> Presentation:
    return Presentation(vertices, [Arrow(n, s, t) for n, s, t in arrows], [])


def _words_by_block(words: Iterable[Word], pres: Presentation) -> Dict[Tuple, List[Word]]:
    out: Dict[Tuple, List[Word]] = {}
    for w in words:
        out.setdefault(pres.path_ends(w), []).append(w)
    return out


def quadratic_dual(pres: Presentation) -> Presentation:
    """Generators ``a*`` and relations the annihilator of the relation space
    under the reversed pairing ``(a, b) <-> (b*, a*)``."""
    if not pres.is_quadratic:
        raise DomainError("quadratic dual needs relations of degree exactly two")
    arrows = [Arrow(dual_name(a.name), a.dst, a.src) for a in pres.arrows]
    relations: List[Dict[Word, Fraction]] = []
    for block, words in sorted(_words_by_block(pres.composable_pairs(), pres).items(), key=str):
        ambient = [(dual_name(b), dual_name(a)) for a, b in words]
        inside = [{(dual_name(w[1]), dual_name(w[0])): c for w, c in r.items()}
                  for r in pres.relations if pres.path_ends(next(iter(r))) == block]
        relations.extend(orthogonal_complement(inside, ambient))
    return Presentation(pres.vertices, arrows, relations)


def presentations_isomorphic(first: Presentation, second: Presentation) -> bool:
    """Same vertices, same arrows by name and endpoints, same relation spaces."""
    if set(first.vertices) != set(second.vertices):
        return False
    if set(first.arrows) != set(second.arrows):
        return False
    return same_span(first.relations, second.relations)


# ---------------------------------------------------------------------------
# degreewise expansion


class PathQuotient:
    """Path algebra modulo the two-sided ideal generated by the relations and by
    the idempotents of ``killed`` vertices, computed degree by degree up to
    ``cutoff``.

    ``window`` restricts the visible basis to paths starting and ending in the
    window, which realizes the corner algebra ``e A e``.
    """

    def __init__(self, presentation: Presentation, cutoff: int, killed: Iterable = (),
                 window: Optional[Iterable] = None):
        if cutoff < 0:
            raise DomainError("cutoff must be non-negative")
        self.presentation = presentation
        self.cutoff = cutoff
        self.vertex_index = {v: i for i, v in enumerate(presentation.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(presentation.arrows)}
        self.ends = [(self.vertex_index[a.src], self.vertex_index[a.dst]) for a in presentation.arrows]
        self.killed = frozenset(self.vertex_index[v] for v in killed)
        self.window = None if window is None else frozenset(self.vertex_index[v] for v in window)
        self._outgoing: Dict[int, List[int]] = {}
        for i, (s, _) in enumerate(self.ends):
            self._outgoing.setdefault(s, []).append(i)
        self._reducers: List[RowReducer] = []
        self._all_basis: List[List[PathKey]] = []
        self.top: Optional[int] = None
        self._expand()

    # construction ---------------------------------------------------------

    def _relation_vectors(self) -> Dict[int, List[Dict[PathKey, Fraction]]]:
        out: Dict[int, List] = {}
        for rel in self.presentation.relations:
            vec = {}
            for word, c in rel.items():
                vec[self.key_of(word)] = c
            out.setdefault(len(next(iter(rel))), []).append(vec)
        return out

    def _touches_killed(self, key: PathKey) -> bool:
        if not self.killed:
            return False
        if key[0] in self.killed:
            return True
        return any(self.ends[a][1] in self.killed for a in key[2])

    def _expand(self) -> None:
        rels = self._relation_vectors()
        paths: List[PathKey] = []
        prev_rows: List[Dict] = []
        for n in range(self.cutoff + 1):
            if n == 0:
                paths = [(v, v, ()) for v in range(len(self.presentation.vertices))]
            else:
                paths = [(s, self.ends[a][1], w + (a,)) for (s, t, w) in paths
                         for a in self._outgoing.get(t, ())]
            red = RowReducer()
            for p in paths:
                if self._touches_killed(p):
                    red.add({p: Fraction(1)})
            for row in prev_rows:
                for a, (s, t) in enumerate(self.ends):
                    left = {(s, k[1], (a,) + k[2]): c for k, c in row.items() if k[0] == t}
                    if left:
                        red.add(left)
                    right = {(k[0], t, k[2] + (a,)): c for k, c in row.items() if k[1] == s}
                    if right:
                        red.add(right)
            for vec in rels.get(n, ()):
                red.add(vec)
            pivots = set(red.pivots)
            basis = [p for p in paths if p not in pivots]
            self._reducers.append(red)
            self._all_basis.append(basis)
            prev_rows = red.basis()
            if not basis:
                self.top = n - 1
                return

    # keys and words -------------------------------------------------------

    def key_of(self, word: Sequence[str]) -> PathKey:
        idx = tuple(self.arrow_index[n] for n in word)
        if not idx:
            raise DomainError("use vertex_key for trivial paths")
        for a, b in zip(idx, idx[1:]):
            if self.ends[a][1] != self.ends[b][0]:
                raise DomainError(f"path {'.'.join(word)} is not composable")
        return (self.ends[idx[0]][0], self.ends[idx[-1]][1], idx)

    def vertex_key(self, vertex) -> PathKey:
        v = self.vertex_index[vertex]
        return (v, v, ())

    def word_of(self, key: PathKey) -> Word:
        return tuple(self.presentation.arrows[a].name for a in key[2])

    def label(self, key: PathKey) -> str:
        if not key[2]:
            return f"e_{self.presentation.vertices[key[0]]}"
        return ".".join(self.word_of(key))

    def vertex_label(self, idx: int):
        return self.presentation.vertices[idx]

    # structure ------------------------------------------------------------

    @property
    def finite(self) -> bool:
        return self.top is not None

    @property
    def computed_degrees(self) -> int:
        return len(self._all_basis)

    def _visible(self, key: PathKey) -> bool:
        return self.window is None or (key[0] in self.window and key[1] in self.window)

    @property
    def vertices(self) -> List[int]:
        return [v for v in range(len(self.presentation.vertices))
                if v not in self.killed and (self.window is None or v in self.window)]

    def basis(self, n: int) -> List[PathKey]:
        if n < 0:
            return []
        if n >= len(self._all_basis):
            if self.finite:
                return []
            raise DomainError(f"degree {n} exceeds the expansion cutoff {self.cutoff}")
        return [k for k in self._all_basis[n] if self._visible(k)]

    def max_degree(self) -> int:
        return self.top if self.finite else self.cutoff

    def normal_form(self, vec: Dict[PathKey, Fraction]) -> Dict[PathKey, Fraction]:
        by_degree: Dict[int, Dict] = {}
        for k, c in vec.items():
            by_degree.setdefault(len(k[2]), {})[k] = c
        out: Dict[PathKey, Fraction] = {}
        for n, part in by_degree.items():
            if n >= len(self._reducers):
                if self.finite:
                    continue
                raise DomainError(f"degree {n} exceeds the expansion cutoff {self.cutoff}")
            add_scaled(out, self._reducers[n].reduce(part), 1)
        return out

    def concat(self, left: PathKey, right: PathKey) -> Optional[PathKey]:
        if left[1] != right[0]:
            return None
        return (left[0], right[1], left[2] + right[2])

    def multiply(self, x: Dict[PathKey, Fraction], y: Dict[PathKey, Fraction]) -> Dict[PathKey, Fraction]:
        raw: Dict[PathKey, Fraction] = {}
        for kx, cx in x.items():
            for ky, cy in y.items():
                k = self.concat(kx, ky)
                if k is not None:
                    raw[k] = raw.get(k, 0) + cx * cy
        return self.normal_form(clean(raw))

    def path_times(self, left: PathKey, right: PathKey) -> Dict[PathKey, Fraction]:
        k = self.concat(left, right)
        if k is None:
            return {}
        return self.normal_form({k: Fraction(1)})

    def dims(self, n: int) -> Dict[Tuple, int]:
        out: Dict[Tuple, int] = {}
        for k in self.basis(n):
            key = (self.vertex_label(k[0]), self.vertex_label(k[1]))
            out[key] = out.get(key, 0) + 1
        return out

    def dim_matrix(self, n: int) -> List[List[int]]:
        d = self.dims(n)
        verts = self.vertices
        return [[d.get((self.vertex_label(i), self.vertex_label(j)), 0) for j in verts] for i in verts]

    def graded_dims(self, upto: Optional[int] = None) -> List[int]:
        upto = self.max_degree() if upto is None else upto
        return [len(self.basis(n)) for n in range(upto + 1)]

    def total_dim(self) -> int:
        if not self.finite:
            raise DomainError("algebra is not known to be finite-dimensional at this cutoff")
        return sum(self.graded_dims())

    def corner(self, keep: Iterable) -> "PathQuotient":
        """``e A e`` for ``e`` the sum of the idempotents in ``keep``."""
        view = object.__new__(PathQuotient)
        view.__dict__.update(self.__dict__)
        keep_idx = frozenset(self.vertex_index[v] for v in keep)
        view.window = keep_idx if self.window is None else (self.window & keep_idx)
        return view

    def to_json(self) -> dict:
        return {
            "vertices": [self.vertex_label(v) for v in self.vertices],
            "graded_dims": self.graded_dims(),
            "finite": self.finite,
            "cutoff": self.cutoff,
            "basis": [[self.label(k) for k in self.basis(n)] for n in range(self.max_degree() + 1)],
        }


def expand(pres: Presentation, cutoff: int) -> PathQuotient:
    return PathQuotient(pres, cutoff)


def truncate(alg: PathQuotient, keep: Iterable) -> Tuple[PathQuotient, PathQuotient]:
    """Corner ``e A e`` and quotient ``A / (1 - e)`` for ``e`` the idempotents in ``keep``."""
    keep = list(keep)
    unknown = [v for v in keep if v not in alg.vertex_index]
    if unknown:
        raise DomainError(f"unknown vertices {unknown}")
    others = [v for v in alg.presentation.vertices if v not in set(keep)]
    quotient = PathQuotient(alg.presentation, alg.cutoff, killed=set(others) | {
        alg.vertex_label(k) for k in alg.killed})
    return alg.corner(keep), quotient


def quadratic_presentation(alg: PathQuotient) -> Presentation:
    """Quadratic part: visible degree-one basis as generators and the kernel of
    multiplication into degree two as relations."""
    if alg.computed_degrees < 3 and not alg.finite:
        raise DomainError("quadratic part needs the expansion through degree two")
    verts = alg.vertices
    vertices = [alg.vertex_label(v) for v in verts]
    gens = alg.basis(1)
    for k in gens:
        if len(k[2]) != 1:
            raise DomainError("degree-one basis is not made of arrows")
    arrows = [Arrow(alg.word_of(k)[0], alg.vertex_label(k[0]), alg.vertex_label(k[1])) for k in gens]
    relations: List[Dict[Word, Fraction]] = []
    blocks: Dict[Tuple, List[Tuple[PathKey, PathKey]]] = {}
    for x in gens:
        for y in gens:
            if x[1] == y[0]:
                blocks.setdefault((x[0], y[1]), []).append((x, y))
    for _, pairs in sorted(blocks.items()):
        columns = [alg.path_times(x, y) for x, y in pairs]
        for rel in kernel(columns):
            relations.append({alg.word_of(pairs[j][0]) + alg.word_of(pairs[j][1]): c for j, c in rel.items()})
    return Presentation(vertices, arrows, relations)


# ---------------------------------------------------------------------------
# duality checks


@dataclass
class DualTruncationReport:
    keep: Tuple
    dims_left: List[List[List[int]]]
    dims_right: List[List[List[int]]]
    generators_match: bool
    relations_equal: bool

    @property
    def dims_equal(self) -> bool:
        return self.dims_left == self.dims_right

    @property
    def ok(self) -> bool:
        return self.dims_equal and self.generators_match and self.relations_equal

    def to_json(self) -> dict:
        return {"keep": list(self.keep), "dims_left": self.dims_left, "dims_right": self.dims_right,
                "dims_equal": self.dims_equal, "generators_match": self.generators_match,
                "relations_equal": self.relations_equal, "ok": self.ok}


def check_dual_truncation(pres: Presentation, keep: Sequence, cutoff: int = 4) -> DualTruncationReport:
    """Compare the quadratic dual of the corner ``e A e`` with ``A^! / (1 - e)``."""
    keep = tuple(keep)
    alg = PathQuotient(pres, max(cutoff, 2))
    corner_dual = PathQuotient(quadratic_dual(quadratic_presentation(alg.corner(keep))), cutoff)
    dual_alg = PathQuotient(quadratic_dual(pres), cutoff)
    _, quotient = truncate(dual_alg, keep)
    order = [v for v in pres.vertices if v in set(keep)]

    def matrices(a: PathQuotient) -> List[List[List[int]]]:
        out = []
        for n in range(cutoff + 1):
            d = a.dims(n)
            out.append([[d.get((x, y), 0) for y in order] for x in order])
        return out

    left_pres = corner_dual.presentation
    right_pres = quadratic_presentation(quotient)
    gens_match = set(left_pres.arrows) == set(right_pres.arrows)
    rels_equal = gens_match and same_span(left_pres.relations, right_pres.relations)
    return DualTruncationReport(keep, matrices(corner_dual), matrices(quotient), gens_match, rels_equal)


@dataclass
class DoubleDualReport:
    presentation_equal: bool
    dims: List[int]
    dims_double: List[int]

    @property
    def ok(self) -> bool:
        return self.presentation_equal and self.dims == self.dims_double


def double_dual_check(pres: Presentation, cutoff: int = 4) -> DoubleDualReport:
    twice = quadratic_dual(quadratic_dual(pres))
    return DoubleDualReport(presentations_isomorphic(pres, twice),
                            PathQuotient(pres, cutoff).graded_dims(cutoff),
                            PathQuotient(twice, cutoff).graded_dims(cutoff))


@dataclass
class HilbertReport:
    ok: bool
    failing_degree: Optional[int]
    coefficients: List[List[List[int]]]


def hilbert_test(alg: PathQuotient, dual: PathQuotient, cutoff: int) -> HilbertReport:
    """Coefficients of ``H_A(t) H_{A!}(-t)^T`` through ``t^cutoff``.

    A failure certifies that ``A`` is not Koszul; success is only necessary.
    """
    verts = [alg.vertex_label(v) for v in alg.vertices]
    if verts != [dual.vertex_label(v) for v in dual.vertices]:
        raise DomainError("algebra and dual must share the vertex set")
    size = len(verts)
    ha = [alg.dim_matrix(n) for n in range(cutoff + 1)]
    hd = [dual.dim_matrix(n) for n in range(cutoff + 1)]
    coeffs = []
    failing = None
    for n in range(cutoff + 1):
        c = [[0] * size for _ in range(size)]
        for i in range(n + 1):
            sign = -1 if (n - i) % 2 else 1
            a, d = ha[i], hd[n - i]
            for x in range(size):
                for y in range(size):
                    c[x][y] += sign * sum(a[x][z] * d[y][z] for z in range(size))
        target = [[int(n == 0 and x == y) for y in range(size)] for x in range(size)]
        if c != target and failing is None:
            failing = n
        coeffs.append(c)
    return HilbertReport(failing is None, failing, coeffs)


# ---------------------------------------------------------------------------
# minimal projective resolutions and Ext


@dataclass
class Generator:
    vertex: int
    degree: int
    image: Dict[Tuple[int, PathKey], Fraction]


class MinimalResolution:
    """Minimal graded projective resolution of the simple module at ``vertex``.

    Step ``i`` is a list of generators; an element of step ``i`` is a dict
    keyed by ``(generator index, path)`` where the path ends at the
    generator's vertex.
    """

    def __init__(self, alg: PathQuotient, vertex: int, steps: int):
        if not alg.finite:
            raise DomainError("minimal resolutions need a finite-dimensional algebra")
        self.alg = alg
        self.vertex = vertex
        self.steps: List[List[Generator]] = [[Generator(vertex, 0, {})]]
        self._by_target: Dict[Tuple[int, int], List[PathKey]] = {}
        for n in range(alg.top + 1):
            for k in alg.basis(n):
                self._by_target.setdefault((n, k[1]), []).append(k)
        self.terminated = False
        for i in range(1, steps + 1):
            gens = self._next_generators(i - 1)
            self.steps.append(gens)
            if not gens:
                self.terminated = True
                break

    def paths_into(self, length: int, vertex: int, source: Optional[int] = None) -> List[PathKey]:
        paths = self._by_target.get((length, vertex), [])
        return paths if source is None else [p for p in paths if p[0] == source]

    def basis_at(self, i: int, degree: int, source: int) -> List[Tuple[int, PathKey]]:
        out = []
        for g, gen in enumerate(self.steps[i]):
            for p in self.paths_into(degree - gen.degree, gen.vertex, source):
                out.append((g, p))
        return out

    def boundary(self, i: int, element: Tuple[int, PathKey]) -> Dict[Tuple[int, PathKey], Fraction]:
        g, p = element
        out: Dict = {}
        for (h, r), c in self.steps[i][g].image.items():
            for k, c2 in self.alg.path_times(p, r).items():
                add_scaled(out, {(h, k): c * c2}, 1)
        return out

    def act_left(self, arrow_key: PathKey, vec: Dict) -> Dict:
        out: Dict = {}
        for (g, p), c in vec.items():
            for k, c2 in self.alg.path_times(arrow_key, p).items():
                add_scaled(out, {(g, k): c * c2}, 1)
        return out

    def _degree_range(self, i: int) -> range:
        degs = [g.degree for g in self.steps[i]]
        return range(min(degs), max(degs) + self.alg.top + 1)

    def _kernel(self, i: int, degree: int, source: int) -> List[Dict]:
        basis = self.basis_at(i, degree, source)
        if i == 0:
            return [{b: Fraction(1)} for b in basis if b[1][2]]
        columns = [self.boundary(i, b) for b in basis]
        return [{basis[j]: c for j, c in rel.items()} for rel in kernel(columns)]

    def _next_generators(self, i: int) -> List[Generator]:
        if not self.steps[i]:
            return []
        alg = self.alg
        arrows = alg.basis(1)
        kernels: Dict[Tuple[int, int], List[Dict]] = {}
        out: List[Generator] = []
        for degree in self._degree_range(i):
            for v in range(len(alg.presentation.vertices)):
                ker = self._kernel(i, degree, v)
                kernels[(degree, v)] = ker
                if not ker:
                    continue
                red = RowReducer()
                for a in arrows:
                    if a[0] != v:
                        continue
                    for k in kernels.get((degree - 1, a[1]), ()):
                        red.add(self.act_left(a, k))
                for k in ker:
                    if red.add(k) is None:
                        out.append(Generator(v, degree, k))
        return out

    def generator_degrees(self) -> List[List[Tuple]]:
        return [[(self.alg.vertex_label(g.vertex), g.degree) for g in gens] for gens in self.steps]

    def is_linear(self, upto: Optional[int] = None) -> bool:
        upto = len(self.steps) - 1 if upto is None else upto
        return all(g.degree == i for i, gens in enumerate(self.steps[:upto + 1]) for g in gens)


@dataclass
class KoszulReport:
    steps: int
    quadratic: bool
    generator_degrees: Dict[str, List[List[Tuple]]]
    linear_steps: Dict[str, int]

    @property
    def ok(self) -> bool:
        return self.quadratic and all(v >= self.steps for v in self.linear_steps.values())

    @property
    def first_nonlinear_step(self) -> Optional[int]:
        bad = [v + 1 for v in self.linear_steps.values() if v < self.steps]
        return min(bad) if bad else None

    def to_json(self) -> dict:
        return {"steps": self.steps, "quadratic": self.quadratic, "ok": self.ok,
                "first_nonlinear_step": self.first_nonlinear_step,
                "generator_degrees": {k: [[list(x) for x in s] for s in v]
                                      for k, v in self.generator_degrees.items()}}


def koszul_resolution_check(alg: PathQuotient, steps: int = 4) -> KoszulReport:
    """Check that step ``i`` of each minimal resolution of a simple is generated in degree ``i``."""
    degrees: Dict[str, List[List[Tuple]]] = {}
    linear: Dict[str, int] = {}
    for v in alg.vertices:
        res = MinimalResolution(alg, v, steps)
        name = str(alg.vertex_label(v))
        degrees[name] = res.generator_degrees()
        good = steps
        for i, gens in enumerate(res.steps):
            if any(g.degree != i for g in gens):
                good = i - 1
                break
        linear[name] = good
    return KoszulReport(steps, alg.presentation.is_quadratic, degrees, linear)


class ExtAlgebra:
    """``Ext(A_0, A_0)`` through homological degree ``cutoff`` with Yoneda products.

    ``dims(n)[l][m]`` counts the generators at vertex ``m`` in step ``n`` of
    the resolution of the simple at ``l``, which is ``dim Ext^n(S_l, S_m)``.
    """

    def __init__(self, alg: PathQuotient, cutoff: int):
        self.alg = alg
        self.cutoff = cutoff
        self.resolutions = {v: MinimalResolution(alg, v, cutoff + 1) for v in alg.vertices}

    @property
    def partial(self) -> bool:
        return not all(r.terminated for r in self.resolutions.values())

    def classes(self, source: int, n: int) -> List[Generator]:
        steps = self.resolutions[source].steps
        return steps[n] if n < len(steps) else []

    def dims(self, n: int) -> Dict[Tuple, int]:
        out: Dict[Tuple, int] = {}
        for v in self.alg.vertices:
            for g in self.classes(v, n):
                key = (self.alg.vertex_label(v), self.alg.vertex_label(g.vertex))
                out[key] = out.get(key, 0) + 1
        return out

    def internal_degrees(self, n: int) -> List[int]:
        return sorted({g.degree for v in self.alg.vertices for g in self.classes(v, n)})

    def yoneda(self, source: int, eta: int, n: int, xi: int) -> Dict[int, Fraction]:
        """``xi o eta`` for ``eta`` the ``eta``-th class of ``Ext^n(S_source, -)`` and
        ``xi`` the ``xi``-th class of ``Ext^1`` out of the vertex of ``eta``.

        Returned as coordinates over the classes of ``Ext^{n+1}(S_source, -)``.
        """
        res = self.resolutions[source]
        gen = res.steps[n][eta]
        target = self.resolutions[gen.vertex]
        out: Dict[int, Fraction] = {}
        if n + 1 >= len(res.steps):
            return out
        for h, hgen in enumerate(res.steps[n + 1]):
            # lift: the chain map sends the eta generator to the top of A e_mu
            rhs = {(0, p): c for (g, p), c in hgen.image.items() if g == eta}
            if not rhs:
                continue
            degree = hgen.degree - gen.degree
            basis = target.basis_at(1, degree, hgen.vertex)
            red = RowReducer()
            for j, b in enumerate(basis):
                red.add(target.boundary(1, b), tag=j)
            sol = red.solve(rhs)
            if sol is None:
                raise VerificationError("chain map lift does not exist; resolution is not exact")
            for j, c in sol.items():
                g2, p = basis[j]
                if g2 == xi and not p[2]:
                    out[h] = out.get(h, 0) + c
        return clean(out)

    def degree_one_arrow(self, source: int, cls: int) -> Optional[str]:
        gen = self.classes(source, 1)[cls]
        if len(gen.image) != 1:
            return None
        (_, p), _ = next(iter(gen.image.items()))
        return self.alg.word_of(p)[0] if len(p[2]) == 1 else None

    def quadratic_relations(self) -> List[Dict[Word, Fraction]]:
        """Kernel of the Yoneda product on degree one, written in dual-arrow words.

        The class of arrow ``a: m -> l`` lies in ``Ext^1(S_l, S_m)`` and is named
        ``a*``; the word ``(a*, b*)`` stands for ``xi_b o eta_a``, which is the
        product in the opposite algebra.
        """
        relations: List[Dict[Word, Fraction]] = []
        for lam in self.alg.vertices:
            columns: List[Dict] = []
            words: List[Word] = []
            for i, eta in enumerate(self.classes(lam, 1)):
                a = self.degree_one_arrow(lam, i)
                mu = eta.vertex
                for j, _ in enumerate(self.classes(mu, 1)):
                    b = self.degree_one_arrow(mu, j)
                    words.append((dual_name(a), dual_name(b)))
                    columns.append(self.yoneda(lam, i, 1, j))
            blocks: Dict = {}
            for w, col in zip(words, columns):
                end = self.alg.presentation.arrow(dual_name(w[1])).src
                blocks.setdefault(end, []).append((w, col))
            for _, items in sorted(blocks.items(), key=str):
                for rel in kernel([c for _, c in items]):
                    relations.append({items[j][0]: c for j, c in rel.items()})
        return relations

    def generated_in_degree_one(self, n: int) -> bool:
        if n <= 1:
            return True
        for lam in self.alg.vertices:
            red = RowReducer()
            for i, eta in enumerate(self.classes(lam, n - 1)):
                for j, _ in enumerate(self.classes(eta.vertex, 1)):
                    red.add(self.yoneda(lam, i, n - 1, j))
            if len(red) != len(self.classes(lam, n)):
                return False
        return True


def ext_algebra(alg: PathQuotient, cutoff: int) -> ExtAlgebra:
    return ExtAlgebra(alg, cutoff)


@dataclass
class ExtAgreementReport:
    cutoff: int
    ext_dims: List[Dict]
    dual_dims: List[Dict]
    diagonal: bool
    relations_equal: bool
    generated: bool
    partial: bool

    @property
    def ok(self) -> bool:
        return self.ext_dims == self.dual_dims and self.diagonal and self.relations_equal and self.generated

    def to_json(self) -> dict:
        def enc(ds):
            return [{f"{k[0]},{k[1]}": v for k, v in sorted(d.items(), key=str)} for d in ds]
        return {"cutoff": self.cutoff, "ext_dims": enc(self.ext_dims), "dual_dims": enc(self.dual_dims),
                "diagonal": self.diagonal, "relations_equal": self.relations_equal,
                "generated": self.generated, "partial": self.partial, "ok": self.ok}


def ext_agreement(pres: Presentation, cutoff: int = 4) -> ExtAgreementReport:
    """Compare the Yoneda algebra with the quadratic dual: graded dimensions per
    idempotent block, purity of internal degrees, degree-two relations and
    generation in degree one."""
    alg = PathQuotient(pres, max(cutoff, 2) + 2)
    if not alg.finite:
        raise DomainError("Ext comparison needs a finite-dimensional algebra")
    ext = ExtAlgebra(alg, cutoff)
    dual = PathQuotient(quadratic_dual(pres), cutoff)
    ext_dims = [ext.dims(n) for n in range(cutoff + 1)]
    dual_dims = [dual.dims(n) for n in range(cutoff + 1)]
    diagonal = all(ext.internal_degrees(n) in ([], [n]) for n in range(cutoff + 1))
    rel_equal = same_span(ext.quadratic_relations(), quadratic_dual(pres).relations)
    generated = all(ext.generated_in_degree_one(n) for n in range(2, cutoff + 1))
    return ExtAgreementReport(cutoff, ext_dims, dual_dims, diagonal, rel_equal, generated, ext.partial)


# ---------------------------------------------------------------------------
# graded modules


class GradedModule:
    """Left module over a quiver algebra: basis entries ``(degree, vertex)`` and
    sparse arrow matrices ``{arrow name: {column: {row: coeff}}}``."""

    def __init__(self, quiver: Presentation, basis: Sequence[Tuple[int, Hashable]],
                 action: Dict[str, Dict[int, Dict[int, Fraction]]]):
        self.quiver = quiver
        self.basis = [(int(d), v) for d, v in basis]
        vset = set(quiver.vertices)
        for d, v in self.basis:
            if v not in vset:
                raise DomainError(f"basis vertex {v!r} is not a vertex of the quiver")
        self.action: Dict[str, Dict[int, Dict[int, Fraction]]] = {}
        for name, matrix in action.items():
            arrow = quiver.arrow(name)
            cols: Dict[int, Dict[int, Fraction]] = {}
            for col, column in matrix.items():
                column = clean(column)
                if not column:
                    continue
                dc, vc = self.basis[col]
                if vc != arrow.dst:
                    raise DomainError(f"arrow {name} acts on a vector outside e_{arrow.dst}")
                for row in column:
                    dr, vr = self.basis[row]
                    if vr != arrow.src or dr != dc + 1:
                        raise DomainError(f"arrow {name} has an entry of the wrong block or degree")
                cols[col] = column
            if cols:
                self.action[name] = cols

    @property
    def dim(self) -> int:
        return len(self.basis)

    def dims(self) -> Dict[Tuple[int, Hashable], int]:
        out: Dict = {}
        for b in self.basis:
            out[b] = out.get(b, 0) + 1
        return out

    def degrees(self) -> List[int]:
        return sorted({d for d, _ in self.basis})

    def indices(self, degree: Optional[int] = None, vertex=None) -> List[int]:
        return [i for i, (d, v) in enumerate(self.basis)
                if (degree is None or d == degree) and (vertex is None or v == vertex)]

    def act(self, name: str, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        matrix = self.action.get(name, {})
        out: Dict[int, Fraction] = {}
        for col, c in vec.items():
            column = matrix.get(col)
            if column:
                add_scaled(out, column, c)
        return out

    def act_word(self, word: Sequence[str], vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        for name in reversed(word):
            vec = self.act(name, vec)
            if not vec:
                break
        return vec

    def relation_violations(self, relations: Iterable[Dict[Word, Fraction]]) -> List[Tuple[int, int]]:
        bad = []
        for r, rel in enumerate(relations):
            for i in range(self.dim):
                total: Dict[int, Fraction] = {}
                for word, c in rel.items():
                    add_scaled(total, self.act_word(word, {i: Fraction(1)}), c)
                if total:
                    bad.append((r, i))
        return bad

    def is_module(self) -> bool:
        return not self.relation_violations(self.quiver.relations)

    def to_json(self) -> dict:
        return {
            "basis": [[d, v] for d, v in self.basis],
            "action": {name: {str(c): {str(r): fraction_str(x) for r, x in sorted(col.items())}
                              for c, col in sorted(m.items())}
                       for name, m in sorted(self.action.items())},
        }


def zero_module(quiver: Presentation) -> GradedModule:
    return GradedModule(quiver, [], {})


def simple_module(quiver: Presentation, vertex, degree: int = 0) -> GradedModule:
    return GradedModule(quiver, [(degree, vertex)], {})


def projective_module(alg: PathQuotient, vertex, max_degree: Optional[int] = None, shift: int = 0) -> GradedModule:
    """``A e_vertex`` (truncated above ``max_degree``) with the prepend action."""
    top = alg.max_degree() if max_degree is None else min(max_degree, alg.max_degree())
    v = alg.vertex_index[vertex]
    keys = [k for n in range(top + 1) for k in alg.basis(n) if k[1] == v]
    index = {k: i for i, k in enumerate(keys)}
    action: Dict[str, Dict[int, Dict[int, Fraction]]] = {}
    for a in alg.basis(1):
        name = alg.word_of(a)[0]
        cols: Dict[int, Dict[int, Fraction]] = {}
        for k, i in index.items():
            if len(k[2]) >= top:
                continue
            img = alg.path_times(a, k)
            if img:
                cols[i] = {index[x]: c for x, c in img.items()}
        action[name] = cols
    basis = [(len(k[2]) + shift, alg.vertex_label(k[0])) for k in keys]
    return GradedModule(alg.presentation, basis, action)


def submodule_closure(module: GradedModule, vectors: Iterable[Dict[int, Fraction]]) -> List[Dict[int, Fraction]]:
    red = RowReducer()
    queue = [clean(v) for v in vectors]
    while queue:
        v = queue.pop()
        if not v or red.contains(v):
            continue
        red.add(v)
        for name in module.action:
            w = module.act(name, v)
            if w:
                queue.append(w)
    return red.basis()


def quotient_module(module: GradedModule, vectors: Iterable[Dict[int, Fraction]]) -> GradedModule:
    """Quotient by the submodule generated by homogeneous ``vectors``."""
    for v in vectors:
        blocks = {module.basis[i] for i in v}
        if len(blocks) > 1:
            raise DomainError("submodule generators must be homogeneous in degree and vertex")
    red = RowReducer()
    for v in submodule_closure(module, vectors):
        red.add(v)
    pivots = set(red.pivots)
    keep = [i for i in range(module.dim) if i not in pivots]
    index = {old: new for new, old in enumerate(keep)}
    action = {}
    for name in module.action:
        cols = {}
        for old in keep:
            img = red.reduce(module.act(name, {old: Fraction(1)}))
            if img:
                cols[index[old]] = {index[r]: c for r, c in img.items()}
        action[name] = cols
    return GradedModule(module.quiver, [module.basis[i] for i in keep], action)


def direct_sum(modules: Sequence[GradedModule]) -> GradedModule:
    if not modules:
        raise DomainError("direct sum of no modules needs a quiver")
    quiver = modules[0].quiver
    basis, action, offset = [], {}, 0
    for m in modules:
        basis.extend(m.basis)
        for name, matrix in m.action.items():
            target = action.setdefault(name, {})
            for col, column in matrix.items():
                target[col + offset] = {r + offset: c for r, c in column.items()}
        offset += m.dim
    return GradedModule(quiver, basis, action)


def shifted(module: GradedModule, amount: int) -> GradedModule:
    return GradedModule(module.quiver, [(d + amount, v) for d, v in module.basis], module.action)


def random_module(alg: PathQuotient, rng: random.Random, max_dim: int = 8) -> GradedModule:
    """A random sum of up to three shifted quotients of truncated projectives,
    of dimension at most ``max_dim``."""
    for _ in range(100):
        parts = []
        for _ in range(rng.randint(1, 3)):
            vertex = alg.vertex_label(rng.choice(alg.vertices))
            proj = projective_module(alg, vertex, rng.randint(0, 3), shift=rng.randint(0, 2))
            gens = []
            for _ in range(rng.randint(0, 2)):
                if not proj.dim:
                    break
                d, v = proj.basis[rng.randrange(proj.dim)]
                idx = proj.indices(d, v)
                vec = clean({i: rng.randint(-2, 2) for i in idx})
                if vec:
                    gens.append(vec)
            parts.append(quotient_module(proj, gens))
        m = direct_sum(parts)
        if 0 < m.dim <= max_dim:
            return m
    raise DomainError("could not draw a small random module")


def corrupted_module(module: GradedModule, rng: random.Random) -> Optional[GradedModule]:
    """Perturb one admissible arrow entry so that some defining relation fails."""
    options = []
    for a in module.quiver.arrows:
        for col, (d, v) in enumerate(module.basis):
            if v != a.dst:
                continue
            for row, (d2, v2) in enumerate(module.basis):
                if v2 == a.src and d2 == d + 1:
                    options.append((a.name, col, row))
    rng.shuffle(options)
    for name, col, row in options:
        action = {n: {c: dict(column) for c, column in m.items()} for n, m in module.action.items()}
        column = action.setdefault(name, {}).setdefault(col, {})
        column[row] = column.get(row, Fraction(0)) + rng.choice((1, -1, 2))
        candidate = GradedModule(module.quiver, module.basis, action)
        if not candidate.is_module():
            return candidate
    return None


def relation_free_module(pres: Presentation, rng: random.Random, max_dim: int = 8) -> Optional[GradedModule]:
    """A random module over the path algebra of the quiver of ``pres`` (relations
    forgotten) that violates some relation of ``pres``, retyped over ``pres``."""
    free = PathQuotient(Presentation(pres.vertices, pres.arrows, []), 4)
    for _ in range(50):
        m = random_module(free, rng, max_dim)
        candidate = GradedModule(pres, m.basis, m.action)
        if not candidate.is_module():
            return candidate
    return None


# ---------------------------------------------------------------------------
# tensor functor and linear complexes


def check_homomorphism(alg: PathQuotient, source: Presentation,
                       psi: Dict[str, Dict[PathKey, Fraction]]) -> None:
    """``psi`` sends each arrow of ``source`` into the matching block of ``alg``
    in degree one and kills every relation; raise otherwise."""
    for a in source.arrows:
        img = psi.get(a.name, {})
        s, t = alg.vertex_index.get(a.src), alg.vertex_index.get(a.dst)
        for k in img:
            if len(k[2]) != 1 or (k[0], k[1]) != (s, t):
                raise DomainError(f"image of {a.name} is not in degree one of e_{a.src} A e_{a.dst}")
    for i, rel in enumerate(source.relations):
        total: Dict[PathKey, Fraction] = {}
        for word, c in rel.items():
            prod = psi.get(word[0], {})
            for name in word[1:]:
                prod = alg.multiply(prod, psi.get(name, {}))
            add_scaled(total, prod, c)
        if total:
            terms = " + ".join(f"{fraction_str(c)}*{'.'.join(w)}" for w, c in sorted(rel.items()))
            raise DomainError(f"homomorphism fails on relation {i}: {terms}")


def tensor_T(alg: PathQuotient, source: Presentation, psi: Dict[str, Dict[PathKey, Fraction]],
             module: GradedModule) -> GradedModule:
    """``A e (x)_{A'} M`` where ``A' -> e A e`` is given on generators by ``psi``.

    Computed as ``A e (x)_{A'_0} M`` modulo ``a psi(x) (x) m - a (x) x m``.
    """
    check_homomorphism(alg, source, psi)
    if not alg.finite:
        raise DomainError("tensor functor needs a finite-dimensional target algebra")
    if module.quiver is not source and set(module.quiver.arrows) != set(source.arrows):
        raise DomainError("module is not over the source quiver")
    paths_to: Dict[int, List[PathKey]] = {}
    for n in range(alg.top + 1):
        for k in alg.basis(n):
            paths_to.setdefault(k[1], []).append(k)
    pairs = []
    for m, (_, v) in enumerate(module.basis):
        if v not in alg.vertex_index:
            raise DomainError(f"module vertex {v!r} is not a vertex of the target")
        for p in paths_to.get(alg.vertex_index[v], ()):
            pairs.append((p, m))
    red = RowReducer()
    for x in source.arrows:
        s = alg.vertex_index[x.src]
        img = psi.get(x.name, {})
        for m in module.indices(vertex=x.dst):
            xm = module.act(x.name, {m: Fraction(1)})
            for p in paths_to.get(s, ()):
                vec: Dict = {}
                for k, c in alg.multiply({p: Fraction(1)}, img).items():
                    add_scaled(vec, {(k, m): c}, 1)
                for m2, c in xm.items():
                    add_scaled(vec, {(p, m2): c}, -1)
                if vec:
                    red.add(vec)
    pivots = set(red.pivots)
    keep = [pm for pm in pairs if pm not in pivots]
    index = {pm: i for i, pm in enumerate(keep)}
    basis = [(len(p[2]) + module.basis[m][0], alg.vertex_label(p[0])) for p, m in keep]
    action: Dict[str, Dict[int, Dict[int, Fraction]]] = {}
    for a in alg.basis(1):
        name = alg.word_of(a)[0]
        cols = {}
        for (p, m), i in index.items():
            raw: Dict = {}
            for k, c in alg.path_times(a, p).items():
                raw[(k, m)] = c
            img = red.reduce(raw)
            if img:
                cols[i] = {index[pm]: c for pm, c in img.items()}
        action[name] = cols
    return GradedModule(alg.presentation, basis, action)


@dataclass
class LinearComplex:
    """``X^k = A<k> (x)_{A_0} M_k`` as free modules on generators ``(vertex, m)``.

    ``images[k][m]`` is the boundary of the generator ``e (x) m`` of ``X^k``,
    a dict over ``(degree-one path, index in M_{k+1})``.
    """

    alg: PathQuotient
    module: GradedModule
    images: Dict[int, Dict[int, Dict[Tuple[PathKey, int], Fraction]]] = field(default_factory=dict)

    def term_dims(self, k: int) -> Dict[Tuple[int, Hashable], int]:
        """Dimensions of ``X^k`` by internal degree and vertex."""
        out: Dict = {}
        for m in self.module.indices(degree=k):
            v = self.alg.vertex_index[self.module.basis[m][1]]
            for n in range(self.alg.max_degree() + 1):
                for p in self.alg.basis(n):
                    if p[1] == v:
                        key = (n + k, self.alg.vertex_label(p[0]))
                        out[key] = out.get(key, 0) + 1
        return out

    def square(self, k: int) -> Dict[int, Dict[Tuple[PathKey, int], Fraction]]:
        """``d(d(e (x) m))`` for generators of ``X^k``; empty values mean zero."""
        out = {}
        for m, img in self.images.get(k, {}).items():
            total: Dict = {}
            for (x, m1), c in img.items():
                for (y, m2), c2 in self.images.get(k + 1, {}).get(m1, {}).items():
                    for key, c3 in self.alg.path_times(x, y).items():
                        add_scaled(total, {(key, m2): c * c2 * c3}, 1)
            out[m] = total
        return out

    def square_violations(self) -> List[int]:
        return sorted(k for k in self.images if any(self.square(k).values()))


def linear_complex(alg: PathQuotient, module: GradedModule) -> LinearComplex:
    """Boundary ``e (x) m -> sum_x x (x) x* m`` over the visible degree-one basis of ``alg``."""
    cx = LinearComplex(alg, module)
    gens = alg.basis(1)
    for k in module.degrees():
        images = {}
        for m in module.indices(degree=k):
            v = alg.vertex_index.get(module.basis[m][1])
            img: Dict = {}
            for x in gens:
                if x[0] != v:
                    continue
                for m2, c in module.act(dual_name(alg.word_of(x)[0]), {m: Fraction(1)}).items():
                    img[(x, m2)] = c
            images[m] = img
        cx.images[k] = images
    return cx


@dataclass
class RebasedCorner:
    """Presentation ``A'`` with generators ``p_i`` sent to a random basis of the
    degree-one part of the corner, and relations pulled back along the map."""

    presentation: Presentation
    psi: Dict[str, Dict[PathKey, Fraction]]
    inverse_dual: Dict[str, Dict[str, Fraction]]


def rebased_corner(alg: PathQuotient, keep: Sequence, rng: random.Random) -> RebasedCorner:
    corner = alg.corner(keep)
    gens = corner.basis(1)
    blocks: Dict[Tuple[int, int], List[PathKey]] = {}
    for g in gens:
        blocks.setdefault((g[0], g[1]), []).append(g)
    arrows, psi, inverse_dual = [], {}, {}
    for (s, t), keys in sorted(blocks.items()):
        size = len(keys)
        while True:
            matrix = [[Fraction(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)]
            inv = _invert(matrix)
            if inv is not None:
                break
        for i in range(size):
            name = f"p{len(arrows)}"
            arrows.append(Arrow(name, alg.vertex_label(s), alg.vertex_label(t)))
            psi[name] = clean({keys[j]: matrix[i][j] for j in range(size)})
            # dual basis: p_i* = sum_j (matrix^{-1})_{j i} y_j*
            inverse_dual[dual_name(name)] = clean({dual_name(alg.word_of(keys[j])[0]): inv[j][i]
                                                   for j in range(size)})
    pairs = [(a, b) for a in arrows for b in arrows if a.dst == b.src]
    by_block: Dict[Tuple, List] = {}
    for a, b in pairs:
        by_block.setdefault((a.src, b.dst), []).append((a, b))
    relations = []
    for _, items in sorted(by_block.items(), key=str):
        columns = [alg.multiply(psi[a.name], psi[b.name]) for a, b in items]
        for rel in kernel(columns):
            relations.append({(items[j][0].name, items[j][1].name): c for j, c in rel.items()})
    pres = Presentation([alg.vertex_label(v) for v in corner.vertices], arrows, relations)
    return RebasedCorner(pres, psi, inverse_dual)


def _invert(matrix: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    size = len(matrix)
    red = RowReducer()
    for i, row in enumerate(matrix):
        vec = {j: c for j, c in enumerate(row) if c}
        if red.add(vec, tag=i) is not None:
            return None
    inv = [[Fraction(0)] * size for _ in range(size)]
    for j in range(size):
        combo = red.solve({j: Fraction(1)})
        for i, c in combo.items():
            inv[j][i] = c
    # rows of inv hold e_j = sum_i inv[j][i] row_i, so inv is the left inverse
    return inv


def transport_module(module: GradedModule, target: Presentation,
                     inverse_dual: Dict[str, Dict[str, Fraction]]) -> GradedModule:
    action = {}
    for name, combo in inverse_dual.items():
        matrix: Dict[int, Dict[int, Fraction]] = {}
        for old, c in combo.items():
            for col, column in module.action.get(old, {}).items():
                target_col = matrix.setdefault(col, {})
                add_scaled(target_col, column, c)
        action[name] = matrix
    return GradedModule(target, module.basis, action)


@dataclass
class PhiSquareReport:
    keep: Tuple
    module_valid: bool
    boundaries_equal: bool
    projectives_match: Optional[bool]
    square_zero: bool

    @property
    def ok(self) -> bool:
        return self.module_valid and self.boundaries_equal and self.square_zero and \
            self.projectives_match is not False


def phi_square_check(pres: Presentation, keep: Sequence, rng: random.Random, cutoff: int = 6) -> PhiSquareReport:
    """Build the linear complex of a module over the dual of the corner twice:
    through a rebased presentation ``A'`` pushed forward along ``psi``, and
    directly over the corner.  Compare the boundaries generator by generator."""
    keep = tuple(keep)
    alg = PathQuotient(pres, cutoff)
    corner = alg.corner(keep)
    corner_dual = PathQuotient(quadratic_dual(quadratic_presentation(corner)), 4)
    module = random_module(corner_dual, rng)
    rebased = rebased_corner(alg, keep, rng)
    source_dual = quadratic_dual(rebased.presentation)
    moved = transport_module(module, source_dual, rebased.inverse_dual)
    valid = moved.is_module()

    source_alg = PathQuotient(rebased.presentation, cutoff)
    via_source = linear_complex(source_alg, moved)
    direct = linear_complex(corner, module)
    equal = True
    for k, images in via_source.images.items():
        for m, img in images.items():
            pushed: Dict = {}
            for (x, m2), c in img.items():
                for key, c2 in rebased.psi[source_alg.word_of(x)[0]].items():
                    add_scaled(pushed, {(key, m2): c * c2}, 1)
            if pushed != direct.images.get(k, {}).get(m, {}):
                equal = False
    projectives = None
    if source_alg.finite and alg.finite:
        projectives = True
        for v in keep:
            image = tensor_T(corner, rebased.presentation, rebased.psi, projective_module(source_alg, v))
            if image.dims() != projective_module(corner, v).dims():
                projectives = False
    square_zero = not direct.square_violations() and not via_source.square_violations()
    return PhiSquareReport(keep, valid, equal, projectives, square_zero)


# ---------------------------------------------------------------------------
# corpus


def random_presentation(rng: random.Random, max_vertices: int = 4, max_arrows: int = 4) -> Presentation:
    """Loopless quiver with random quadratic relations: each block of composable
    pairs gets a random subspace of random rank."""
    n = rng.randint(2, max_vertices)
    m = rng.randint(1, max_arrows)
    arrows = []
    for i in range(m):
        s, t = rng.sample(range(1, n + 1), 2)
        arrows.append(Arrow(f"a{i}", s, t))
    pres = Presentation(list(range(1, n + 1)), arrows, [])
    relations = []
    for _, words in sorted(_words_by_block(pres.composable_pairs(), pres).items(), key=str):
        for _ in range(rng.randint(0, len(words))):
            rel = clean({w: rng.randint(-2, 2) for w in words})
            if rel:
                relations.append(rel)
    return Presentation(pres.vertices, arrows, relations)


def random_corpus(seed: int, count: int, max_vertices: int = 4, max_arrows: int = 4) -> List[Presentation]:
    rng = random.Random(seed)
    return [random_presentation(rng, max_vertices, max_arrows) for _ in range(count)]


def radical_square_zero_family() -> Dict[str, Presentation]:
    return {
        "A2": radical_square_zero([1, 2], [("a", 1, 2)]),
        "A3": radical_square_zero([1, 2, 3], [("a", 1, 2), ("b", 2, 3)]),
        "A4": radical_square_zero([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 3), ("c", 3, 4)]),
        "cycle2": radical_square_zero([1, 2], [("a", 1, 2), ("b", 2, 1)]),
        "cycle3": radical_square_zero([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)]),
        "star": radical_square_zero([1, 2, 3, 4], [("a", 1, 2), ("b", 3, 2), ("c", 2, 4)]),
        "kronecker": radical_square_zero([1, 2], [("a", 1, 2), ("b", 1, 2)]),
        "loop": radical_square_zero([1], [("x", 1, 1)]),
    }


def commutative_square() -> Presentation:
    arrows = [Arrow("a", 1, 2), Arrow("b", 2, 4), Arrow("c", 1, 3), Arrow("d", 3, 4)]
    return Presentation([1, 2, 3, 4], arrows, [{("a", "b"): 1, ("c", "d"): -1}])
