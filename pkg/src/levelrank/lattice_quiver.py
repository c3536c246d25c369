"""Quivers of cyclic and linear type, their root and weight lattices, the
doubling construction and the integer maps relating levels ``e`` and ``e+1``.

Vertices of the cyclic quiver with ``e`` vertices are the residues
``0..e-1``.  Vertices of a union of ``l`` two-sided infinite lines are
pairs ``(a, b)`` with ``a`` an integer and ``b`` in ``1..l``; only a
finite window of ``a`` is enumerated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DomainError, VerificationError

Vertex = Hashable


def _sort_key(v):
    return (0, v) if isinstance(v, int) else (1, tuple(v))


def _normalize(coeffs: Mapping) -> Tuple[Tuple[Vertex, int], ...]:
    items = [(k, int(v)) for k, v in coeffs.items() if v != 0]
    return tuple(sorted(items, key=lambda kv: _sort_key(kv[0])))


# --------------------------------------------------------------------------
# Quivers


@dataclass(frozen=True)
class Quiver:
    """A quiver without one-loops.

    ``kind`` is one of ``"cyclic"``, ``"linear_union"`` or ``"doubled"``.
    """

    kind: str
    vertices: Tuple[Vertex, ...]
    arrows: Tuple[Tuple[Tuple[Vertex, Vertex], int], ...]
    e: Optional[int] = None
    l: Optional[int] = None
    base: Optional["Quiver"] = None
    doubled_set: Tuple[Vertex, ...] = ()

    def __post_init__(self):
        for (i, j), n in self.arrows:
            if i == j and n:
                raise DomainError(f"one-loop at vertex {i!r}")
            if n < 0:
                raise DomainError("negative arrow count")

    @property
    def _arrow_map(self) -> Dict[Tuple[Vertex, Vertex], int]:
        return dict(self.arrows)

    def has_vertex(self, v) -> bool:
        if self.kind == "linear_union":
            return isinstance(v, tuple) and len(v) == 2 and 1 <= v[1] <= self.l
        return v in self.vertices

    def arrow_count(self, i: Vertex, j: Vertex) -> int:
        for v in (i, j):
            if not self.has_vertex(v):
                raise DomainError(f"unknown vertex {v!r}")
        if self.kind == "linear_union":
            return int(i[1] == j[1] and j[0] == i[0] + 1)
        return self._arrow_map.get((i, j), 0)

    def successor(self, i: Vertex) -> Vertex:
        """The unique vertex ``i+1`` with an arrow ``i -> i+1``."""
        if self.kind == "cyclic":
            return (i + 1) % self.e
        if self.kind == "linear_union":
            return (i[0] + 1, i[1])
        outs = [j for (a, j), n in self.arrows if a == i and n]
        if len(outs) != 1:
            raise DomainError(f"vertex {i!r} has no unique successor")
        return outs[0]


def cyclic_quiver(e: int) -> Quiver:
    if e < 2:
        raise DomainError("cyclic quiver needs e >= 2")
    arrows: Dict[Tuple[int, int], int] = {}
    for i in range(e):
        key = (i, (i + 1) % e)
        arrows[key] = arrows.get(key, 0) + 1
    return Quiver("cyclic", tuple(range(e)), tuple(sorted(arrows.items())), e=e)


def linear_union_quiver(l: int, lo: int = -5, hi: int = 5) -> Quiver:
    """``l`` copies of the infinite line, enumerated on the window ``[lo, hi]``."""
    if l < 1:
        raise DomainError("need at least one component")
    verts = tuple((a, b) for b in range(1, l + 1) for a in range(lo, hi + 1))
    arrows = tuple((((a, b), (a + 1, b)), 1) for b in range(1, l + 1) for a in range(lo, hi))
    return Quiver("linear_union", verts, arrows, l=l)


def doubled_quiver(base: Quiver, doubled: Iterable[Vertex]) -> Quiver:
    """Replace each vertex ``i`` in ``doubled`` by ``i^1 -> i^2``.

    Vertices of the result are ``(i, 0)`` for untouched vertices and
    ``(i, 1)``, ``(i, 2)`` for doubled ones.  Incoming arrows go to
    ``i^1`` and outgoing arrows leave from ``i^2``.
    """
    I1 = tuple(sorted(set(doubled), key=_sort_key))
    for i in I1:
        for j in I1:
            if base.arrow_count(i, j):
                raise DomainError(f"doubled set has an internal arrow {i!r}->{j!r}")
    verts: List[Vertex] = []
    for i in base.vertices:
        if i in I1:
            verts.extend([(i, 1), (i, 2)])
        else:
            verts.append((i, 0))
    arrows: Dict[Tuple[Vertex, Vertex], int] = {}
    for (i, j), n in base.arrows:
        src = (i, 2) if i in I1 else (i, 0)
        dst = (j, 1) if j in I1 else (j, 0)
        arrows[(src, dst)] = arrows.get((src, dst), 0) + n
    for i in I1:
        arrows[((i, 1), (i, 2))] = 1
    return Quiver("doubled", tuple(verts), tuple(sorted(arrows.items(), key=repr)),
                  base=base, doubled_set=I1)


def cartan_entry(quiver: Quiver, i: Vertex, j: Vertex) -> int:
    """``2 delta_ij - h_ij - h_ji``."""
    return 2 * int(i == j) - quiver.arrow_count(i, j) - quiver.arrow_count(j, i)


# --------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class RootVector:
    """Finitely supported integer combination of simple roots."""

    items: Tuple[Tuple[Vertex, int], ...] = ()

    @classmethod
    def of(cls, coeffs: Mapping) -> "RootVector":
        return cls(_normalize(coeffs))

    @classmethod
    def simple(cls, i: Vertex, c: int = 1) -> "RootVector":
        return cls.of({i: c})

    @property
    def coeffs(self) -> Dict[Vertex, int]:
        return dict(self.items)

    def coeff(self, i) -> int:
        return self.coeffs.get(i, 0)

    def __add__(self, other: "RootVector") -> "RootVector":
        c = self.coeffs
        for k, v in other.items:
            c[k] = c.get(k, 0) + v
        return RootVector.of(c)

    def __neg__(self) -> "RootVector":
        return RootVector.of({k: -v for k, v in self.items})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, n: int) -> "RootVector":
        return RootVector.of({k: n * v for k, v in self.items})

    def is_positive(self) -> bool:
        """Membership in the positive cone ``Q^+``."""
        return all(v >= 0 for _, v in self.items)

    @property
    def height(self) -> int:
        if not self.is_positive():
            raise DomainError("height is defined on the positive cone only")
        return sum(v for _, v in self.items)

    def to_json(self) -> dict:
        return {"coeffs": {str(k): v for k, v in self.items}, "chi": 0}

    def __repr__(self):
        if not self.items:
            return "0"
        return " + ".join(f"{v}*a{k}" for k, v in self.items)


@dataclass(frozen=True)
class WeightVector:
    """Element of ``X_I`` (``chi == 0``) or of ``X_I^chi``."""

    items: Tuple[Tuple[Vertex, int], ...] = ()
    chi: int = 0

    @classmethod
    def of(cls, coeffs: Mapping, chi: int = 0) -> "WeightVector":
        return cls(_normalize(coeffs), int(chi))

    @property
    def coeffs(self) -> Dict[Vertex, int]:
        return dict(self.items)

    def coeff(self, i) -> int:
        return self.coeffs.get(i, 0)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        c = self.coeffs
        for k, v in other.items:
            c[k] = c.get(k, 0) + v
        return WeightVector.of(c, self.chi + other.chi)

    def __neg__(self):
        return WeightVector.of({k: -v for k, v in self.items}, -self.chi)

    def __sub__(self, other):
        return self + (-other)

    def in_level_set(self, N: int) -> bool:
        """Membership in ``X[N]``: nonnegative coefficients summing to ``N``."""
        return all(v >= 0 for _, v in self.items) and sum(v for _, v in self.items) == N

    def drop_chi(self) -> "WeightVector":
        return WeightVector(self.items, 0)

    def to_json(self) -> dict:
        return {"coeffs": {str(k): v for k, v in self.items}, "chi": self.chi}

    def __repr__(self):
        body = " + ".join(f"{v}*eps{k}" for k, v in self.items) or "0"
        return body + (f" + {self.chi}*chi" if self.chi else "")


def iota(alpha: RootVector, quiver: Quiver) -> WeightVector:
    """``alpha_i -> eps_i - eps_{i+1}``."""
    c: Dict[Vertex, int] = {}
    for i, n in alpha.items:
        j = quiver.successor(i)
        c[i] = c.get(i, 0) + n
        c[j] = c.get(j, 0) - n
    return WeightVector.of(c)


def iota_chi(alpha: RootVector, quiver: Quiver) -> WeightVector:
    """``alpha_i -> eps_i - eps_{i+1} - chi``."""
    w = iota(alpha, quiver)
    return WeightVector(w.items, -sum(n for _, n in alpha.items))


def root_from_weight(x: WeightVector, quiver: Quiver) -> RootVector:
    """Invert ``iota_chi``; raise ``DomainError`` if ``x`` is not in its image.

    On a cycle the coefficients are determined up to a common constant by
    successive differences, and the constant is fixed by the ``chi``
    coefficient.  On a line the coefficients are running sums.
    """
    d = x.coeffs
    if not d and x.chi == 0:
        return RootVector()
    if quiver.kind == "linear_union":
        out: Dict[Vertex, int] = {}
        for b in sorted({v[1] for v in d}):
            support = sorted(v[0] for v in d if v[1] == b)
            running = 0
            for a in range(support[0], support[-1] + 1):
                running += d.get((a, b), 0)
                if running:
                    out[(a, b)] = running
            if running != 0:
                raise DomainError("weight is not a sum of simple roots on a line")
        root = RootVector.of(out)
        if -sum(out.values()) != x.chi:
            raise DomainError("chi coefficient incompatible with the root part")
        return root
    # cyclic component (also the doubled cyclic quiver)
    start = quiver.vertices[0]
    cycle = [start]
    v = quiver.successor(start)
    while v != start:
        cycle.append(v)
        v = quiver.successor(v)
    if len(cycle) != len(quiver.vertices):
        raise DomainError("inversion implemented for a single cyclic component")
    if any(k not in cycle for k in d):
        raise DomainError("weight has support outside the quiver")
    if sum(d.values()) != 0:
        raise DomainError("weight has nonzero total degree; not in the root image")
    # c_{v_t} = c_{v_0} + sum_{s=1..t} d_{v_s}
    partial = []
    acc = 0
    for t, vt in enumerate(cycle):
        if t > 0:
            acc += d.get(vt, 0)
        partial.append(acc)
    n = len(cycle)
    total = -x.chi - sum(partial)
    if total % n:
        raise DomainError("chi coefficient does not give an integral root")
    c0 = total // n
    root = RootVector.of({vt: c0 + p for vt, p in zip(cycle, partial)})
    if iota_chi(root, quiver) != x:
        raise VerificationError("root inversion failed to reproduce the weight")
    return root


# --------------------------------------------------------------------------
# The integer map and the doubling at k


def upsilon(n: int, e: int, k: int) -> int:
    """The increasing map ``Z -> Z`` skipping the residues ``k+1`` mod ``e+1``."""
    if e < 2:
        raise DomainError("upsilon needs e >= 2")
    if not 0 <= k <= e - 1:
        raise DomainError("k must lie in [0, e-1]")
    a, b = divmod(n, e)
    return a * (e + 1) + b + (0 if b <= k else 1)


def upsilon_weight(lam: Sequence[int], e: int, k: int) -> Tuple[int, ...]:
    return tuple(upsilon(x, e, k) for x in lam)


@dataclass(frozen=True)
class DoubledVertexMap:
    """Vertex map of a doubling, already composed with the identification
    of the doubled quiver with a standard one.

    ``forward(i)`` returns ``(i^0,)`` or ``(i^1, i^2)``; ``prime(i)`` is
    ``i^0`` or ``i^1``.
    """

    forward: Callable[[Vertex], Tuple[Vertex, ...]]
    source: Quiver
    target: Quiver

    def prime(self, i: Vertex) -> Vertex:
        return self.forward(i)[0]

    def is_doubled(self, i: Vertex) -> bool:
        return len(self.forward(i)) == 2


def cyclic_doubling(e: int, k: int) -> DoubledVertexMap:
    """Doubling of the cyclic quiver at ``k`` identified with ``e+1`` vertices."""
    if not 0 <= k <= e - 1:
        raise DomainError("k must lie in [0, e-1]")

    def fwd(i):
        i %= e
        if i < k:
            return (i,)
        if i == k:
            return (k, k + 1)
        return (i + 1,)

    return DoubledVertexMap(fwd, cyclic_quiver(e), cyclic_quiver(e + 1))


def line_doubling(e: int, k: int, l: int, lo: int = -5, hi: int = 5) -> DoubledVertexMap:
    """Doubling of ``l`` infinite lines at the vertices ``(a, b)`` with ``a = k mod e``."""

    def fwd(v):
        a, b = v
        u = upsilon(a, e, k)
        if a % e == k:
            return ((u, b), (u + 1, b))
        return ((u, b),)

    return DoubledVertexMap(fwd, linear_union_quiver(l, lo, hi),
                            linear_union_quiver(l, upsilon(lo, e, k), upsilon(hi, e, k) + 1))


def phi_root(alpha: RootVector, dmap: DoubledVertexMap) -> RootVector:
    out: Dict[Vertex, int] = {}
    for i, n in alpha.items:
        for j in dmap.forward(i):
            out[j] = out.get(j, 0) + n
    return RootVector.of(out)


def phi_weight(mu: WeightVector, dmap: DoubledVertexMap) -> WeightVector:
    out: Dict[Vertex, int] = {}
    for i, n in mu.items:
        j = dmap.prime(i)
        out[j] = out.get(j, 0) + n
    return WeightVector.of(out, mu.chi)


def phi_sequence(seq: Sequence[Vertex], dmap: DoubledVertexMap) -> Tuple[Vertex, ...]:
    out: List[Vertex] = []
    for i in seq:
        out.extend(dmap.forward(i))
    return tuple(out)


def sequences_of(alpha: RootVector) -> List[Tuple[Vertex, ...]]:
    """All sequences ``(i_1, ..., i_|alpha|)`` whose roots sum to ``alpha``."""
    letters: List[Vertex] = []
    for i, n in alpha.items:
        if n < 0:
            raise DomainError("sequences are defined for positive roots")
        letters.extend([i] * n)
    return sorted(set(itertools.permutations(letters)), key=lambda s: [_sort_key(x) for x in s])


def root_of_sequence(seq: Sequence[Vertex]) -> RootVector:
    out: Dict[Vertex, int] = {}
    for i in seq:
        out[i] = out.get(i, 0) + 1
    return RootVector.of(out)


def doubling_isomorphism_check(e: int, k: int) -> bool:
    """Compare arrow counts of the doubled cyclic quiver with ``e+1`` vertices."""
    base = cyclic_quiver(e)
    dq = doubled_quiver(base, [k])
    target = cyclic_quiver(e + 1)

    def label(v):
        i, s = v
        if s == 0:
            return i if i < k else i + 1
        return k if s == 1 else k + 1

    if sorted(label(v) for v in dq.vertices) != list(range(e + 1)):
        return False
    for u in dq.vertices:
        for v in dq.vertices:
            if dq.arrow_count(u, v) != target.arrow_count(label(u), label(v)):
                return False
    return True


# --------------------------------------------------------------------------
# Projections from the lines to the cycle


def pi_vertex(v: Tuple[int, int], e: int) -> int:
    return v[0] % e


def pi_root(alpha: RootVector, e: int) -> RootVector:
    out: Dict[int, int] = {}
    for v, n in alpha.items:
        j = pi_vertex(v, e)
        out[j] = out.get(j, 0) + n
    return RootVector.of(out)


def pi_weight(mu: WeightVector, e: int) -> WeightVector:
    out: Dict[int, int] = {}
    for v, n in mu.items:
        j = pi_vertex(v, e)
        out[j] = out.get(j, 0) + n
    return WeightVector.of(out, mu.chi)


def pi_sequence(seq: Sequence[Tuple[int, int]], e: int) -> Tuple[int, ...]:
    return tuple(pi_vertex(v, e) for v in seq)


def pi_e(x, e: int):
    """Reduce a vertex, root, weight or vertex sequence of the lines mod ``e``."""
    if isinstance(x, RootVector):
        return pi_root(x, e)
    if isinstance(x, WeightVector):
        return pi_weight(x, e)
    if isinstance(x, tuple) and len(x) == 2 and all(isinstance(t, int) for t in x):
        return pi_vertex(x, e)
    return pi_sequence(x, e)


def commuting_squares(alpha_tilde: RootVector, mu_tilde: WeightVector, e: int, k: int) -> Dict[str, bool]:
    """Evaluate both paths of the three squares relating the lines and the cycles."""
    lam = [v[0] for v, _ in alpha_tilde.items] + [v[0] for v, _ in mu_tilde.items] or [0]
    l = max([v[1] for v, _ in alpha_tilde.items] + [v[1] for v, _ in mu_tilde.items] or [1])
    tilde = line_doubling(e, k, l, min(lam) - 1, max(lam) + 1)
    cyc = cyclic_doubling(e, k)
    out = {
        "roots": pi_root(phi_root(alpha_tilde, tilde), e + 1) == phi_root(pi_root(alpha_tilde, e), cyc),
        "weights": pi_weight(phi_weight(mu_tilde, tilde), e + 1) == phi_weight(pi_weight(mu_tilde, e), cyc),
    }
    ok = True
    if alpha_tilde.is_positive():
        for seq in sequences_of(alpha_tilde)[:24]:
            left = pi_sequence(phi_sequence(seq, tilde), e + 1)
            right = phi_sequence(pi_sequence(seq, e), cyc)
            if left != right:
                ok = False
                break
    out["sequences"] = ok
    return out


# --------------------------------------------------------------------------
# Weights of integer vectors


def wt_e(lam: Sequence[int], e: int) -> WeightVector:
    """``sum_r eps_{lam_r mod e}``."""
    out: Dict[int, int] = {}
    for x in lam:
        out[x % e] = out.get(x % e, 0) + 1
    return WeightVector.of(out)


def wt_chi_e(lam: Sequence[int], e: int) -> WeightVector:
    """``wt_e`` plus ``(sum lam) chi``."""
    return WeightVector(wt_e(lam, e).items, sum(lam))


def weight_class_difference(lam1: Sequence[int], lam2: Sequence[int], e: int) -> RootVector:
    """The root ``alpha`` with ``iota_chi(alpha) = wt^chi(lam1) - wt^chi(lam2)``."""
    return root_from_weight(wt_chi_e(lam1, e) - wt_chi_e(lam2, e), cyclic_quiver(e))


def weight_from_tuple(mu: Sequence[int]) -> WeightVector:
    """``(mu_1, ..., mu_e)`` with ``mu_e`` the coefficient of ``eps_0``."""
    e = len(mu)
    return WeightVector.of({i % e: mu[i - 1] for i in range(1, e + 1)})


def weight_to_tuple(w: WeightVector, e: int) -> Tuple[int, ...]:
    return tuple(w.coeff(i % e) for i in range(1, e + 1))


def mu_bar(mu: Sequence[int], k: int) -> Tuple[int, ...]:
    """Image of ``mu`` under the doubling at ``k``, in tuple form."""
    e = len(mu)
    return weight_to_tuple(phi_weight(weight_from_tuple(mu), cyclic_doubling(e, k)), e + 1)


def rho_nu(nu: Sequence[int]) -> Tuple[int, ...]:
    """``(nu_1, ..., 1, nu_2, ..., 1, ...)``."""
    out: List[int] = []
    for n in nu:
        if n < 0:
            raise DomainError("composition entries must be nonnegative")
        out.extend(range(n, 0, -1))
    return tuple(out)


def beta_offset(nu: Sequence[int], e: int, k: int) -> RootVector:
    """``wt^chi_{e+1}(rho_nu) - wt^chi_{e+1}(Upsilon(rho_nu))`` as a root."""
    if any(n <= 0 for n in nu):
        raise DomainError("nu must be a composition with positive parts")
    rho = rho_nu(nu)
    beta = weight_class_difference(rho, upsilon_weight(rho, e, k), e + 1)
    if not beta.is_positive():
        raise VerificationError(f"beta offset {beta!r} is not in the positive cone")
    return beta
