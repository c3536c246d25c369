"""Sparse exact linear algebra over the rationals.

Vectors are plain dicts mapping a hashable column key to a nonzero
``Fraction`` (or ``int``).  Column keys only need to be mutually
comparable so that pivots can be chosen deterministically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vector = Dict[Hashable, Fraction]


def clean(vec: Dict) -> Vector:
    """Drop zero entries and coerce values to Fraction."""
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


def add_scaled(target: Dict, source: Dict, factor) -> None:
    """In place ``target += factor * source`` keeping the dict sparse."""
    if factor == 0:
        return
    for k, v in source.items():
        nv = target.get(k, 0) + factor * v
        if nv == 0:
            target.pop(k, None)
        else:
            target[k] = nv


def scale(vec: Dict, factor) -> Vector:
    if factor == 0:
        return {}
    return {k: v * factor for k, v in vec.items()}


def vec_sub(a: Dict, b: Dict) -> Vector:
    out = dict(a)
    add_scaled(out, b, -1)
    return out


def dot(a: Dict, b: Dict):
    if len(a) > len(b):
        a, b = b, a
    return sum((v * b[k] for k, v in a.items() if k in b), Fraction(0))


class RowReducer:
    """Incremental fully reduced echelon form that remembers provenance.

    Every stored row carries a ``combo`` recording which inserted vectors
    it is built from, so the reducer can return linear relations among
    the inserted vectors and solve membership problems.
    """

    def __init__(self) -> None:
        self._rows: Dict[Hashable, Tuple[Vector, Vector]] = {}
        self._order: List[Hashable] = []

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self._rows)

    def _reduce(self, vec: Dict, combo: Dict) -> Tuple[Vector, Vector]:
        vec = dict(vec)
        combo = dict(combo)
        for p in [k for k in vec if k in self._rows]:
            f = vec.get(p, 0)
            if f == 0:
                continue
            row, rcombo = self._rows[p]
            add_scaled(vec, row, -f)
            add_scaled(combo, rcombo, -f)
        return vec, combo

    def reduce(self, vec: Dict) -> Vector:
        """Return the normal form of ``vec`` modulo the current span."""
        return self._reduce(vec, {})[0]

    def contains(self, vec: Dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Dict, tag: Hashable = None) -> Optional[Vector]:
        """Insert ``vec``.

        Returns ``None`` if the vector was independent, otherwise the
        relation (a combo over tags, including ``tag`` with coefficient 1)
        that expresses the dependency.
        """
        combo = {} if tag is None else {tag: Fraction(1)}
        vec, combo = self._reduce(vec, combo)
        if not vec:
            return combo
        p = min(vec)
        inv = 1 / Fraction(vec[p])
        vec = scale(vec, inv)
        combo = scale(combo, inv)
        for q, (row, rcombo) in self._rows.items():
            f = row.get(p, 0)
            if f:
                add_scaled(row, vec, -f)
                add_scaled(rcombo, combo, -f)
        self._rows[p] = (vec, combo)
        self._order.append(p)
        return None

    def solve(self, vec: Dict) -> Optional[Vector]:
        """Express ``vec`` as a combination of inserted tagged vectors."""
        rem, combo = self._reduce(vec, {})
        if rem:
            return None
        return scale(combo, -1)

    def basis(self) -> List[Vector]:
        return [dict(self._rows[p][0]) for p in sorted(self._rows)]


def rank(vectors: Iterable[Dict]) -> int:
    red = RowReducer()
    for v in vectors:
        red.add(v)
    return len(red)


def independent_subset(vectors: Sequence[Dict]) -> List[int]:
    """Indices of a greedy maximal independent subfamily."""
    red = RowReducer()
    keep = []
    for i, v in enumerate(vectors):
        if red.add(v) is None:
            keep.append(i)
    return keep


def kernel(columns: Sequence[Dict]) -> List[Vector]:
    """Basis of ``{c : sum_j c_j columns[j] = 0}`` as dicts over ``j``."""
    red = RowReducer()
    out = []
    for j, col in enumerate(columns):
        rel = red.add(col, tag=j)
        if rel is not None:
            out.append(clean(rel))
    return out


def span_basis(vectors: Iterable[Dict]) -> List[Vector]:
    red = RowReducer()
    for v in vectors:
        red.add(v)
    return red.basis()


def orthogonal_complement(vectors: Iterable[Dict], ambient: Sequence[Hashable]) -> List[Vector]:
    """Basis of the annihilator of ``span(vectors)`` inside ``Q^ambient``.

    Uses the standard dot product on the coordinate basis ``ambient``.
    """
    rows = span_basis(vectors)
    if not rows:
        return [{a: Fraction(1)} for a in ambient]
    # Solve x . row = 0 for every row: build columns indexed by ambient keys.
    columns = []
    for a in ambient:
        columns.append({i: r[a] for i, r in enumerate(rows) if a in r})
    rels = kernel(columns)
    return [{ambient[j]: c for j, c in rel.items()} for rel in rels]


def same_span(a: Iterable[Dict], b: Iterable[Dict]) -> bool:
    ba = span_basis(a)
    bb = span_basis(b)
    if len(ba) != len(bb):
        return False
    red = RowReducer()
    for v in ba:
        red.add(v)
    return all(red.contains(v) for v in bb)


def mat_vec(matrix: Dict[Hashable, Dict], vec: Dict) -> Vector:
    """Apply a column-sparse matrix ``{col: column_vector}`` to ``vec``."""
    out: Vector = {}
    for k, v in vec.items():
        col = matrix.get(k)
        if col:
            add_scaled(out, col, v)
    return out


def fraction_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    return Fraction(str(s))
