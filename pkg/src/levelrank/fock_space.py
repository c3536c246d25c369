"""The natural module ``U_e`` of affine ``sl_e``, its higher-level wedges,
multipartition residues and the level-rank embedding.

``U_e`` has basis ``u_r`` (``r`` in ``Z``) with ``f_i u_r = u_{r+1}`` when
``r = i`` mod ``e`` and ``e_i u_r = u_{r-1}`` when ``r - 1 = i`` mod ``e``.
A wedge ``u_{lam_1} ^ ... ^ u_{lam_N}`` for a composition ``nu`` of ``N``
is antisymmetric inside each ``nu``-block; normal forms are strictly
decreasing inside each block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError
from .lattice_quiver import RootVector, WeightVector, rho_nu, upsilon, wt_e

Weight = Tuple[int, ...]


# --------------------------------------------------------------------------
# Single factors


def u_action(op: str, i: int, r: int, e: int) -> Optional[int]:
    """Index of ``op_i u_r`` or ``None`` when it vanishes."""
    if e < 2:
        raise DomainError("e must be at least 2")
    if op == "f":
        return r + 1 if (r - i) % e == 0 else None
    if op == "e":
        return r - 1 if (r - 1 - i) % e == 0 else None
    raise DomainError(f"unknown operator {op!r}")


def h_eigenvalue(i: int, r: int, e: int) -> int:
    return int((r - i) % e == 0) - int((r - i - 1) % e == 0)


# --------------------------------------------------------------------------
# Wedge vectors


def _blocks(nu: Sequence[int]) -> List[Tuple[int, int]]:
    out, pos = [], 0
    for n in nu:
        out.append((pos, pos + n))
        pos += n
    return out


def straighten(lam: Sequence[int], nu: Sequence[int]) -> Tuple[int, Optional[Weight]]:
    """Sign and normal form of a wedge symbol, or ``(0, None)`` if it vanishes."""
    sign = 1
    out: List[int] = []
    for a, b in _blocks(nu):
        block = list(lam[a:b])
        if len(set(block)) < len(block):
            return 0, None
        # parity of the sorting permutation via inversion count
        inv = sum(1 for x, y in itertools.combinations(block, 2) if x < y)
        if inv % 2:
            sign = -sign
        out.extend(sorted(block, reverse=True))
    return sign, tuple(out)


@dataclass(frozen=True)
class WedgeVector:
    """Exact linear combination of normalized wedges ``^nu_lam``."""

    terms: Tuple[Tuple[Weight, Fraction], ...]
    nu: Tuple[int, ...]
    e: int

    @classmethod
    def from_dict(cls, terms: Dict[Weight, Fraction], nu: Sequence[int], e: int) -> "WedgeVector":
        nu = tuple(nu)
        acc: Dict[Weight, Fraction] = {}
        for lam, c in terms.items():
            if len(lam) != sum(nu):
                raise DomainError("wedge length does not match nu")
            sign, norm = straighten(lam, nu)
            if sign == 0:
                continue
            acc[norm] = acc.get(norm, Fraction(0)) + sign * Fraction(c)
        items = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        return cls(items, nu, e)

    @classmethod
    def basis(cls, lam: Sequence[int], nu: Sequence[int], e: int) -> "WedgeVector":
        return cls.from_dict({tuple(lam): Fraction(1)}, nu, e)

    @classmethod
    def zero(cls, nu: Sequence[int], e: int) -> "WedgeVector":
        return cls((), tuple(nu), e)

    @property
    def N(self) -> int:
        return sum(self.nu)

    def as_dict(self) -> Dict[Weight, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WedgeVector") -> "WedgeVector":
        self._compatible(other)
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, Fraction(0)) + v
        return WedgeVector.from_dict(d, self.nu, self.e)

    def __sub__(self, other: "WedgeVector") -> "WedgeVector":
        return self + other.scaled(-1)

    def scaled(self, c) -> "WedgeVector":
        return WedgeVector.from_dict({k: v * c for k, v in self.terms}, self.nu, self.e)

    def _compatible(self, other):
        if self.nu != other.nu or self.e != other.e:
            raise DomainError("wedge vectors live in different spaces")

    def to_json(self) -> List:
        from .exact import fraction_str
        return [[list(k), fraction_str(v)] for k, v in self.terms]

    @classmethod
    def from_json(cls, data: Sequence, nu: Sequence[int], e: int) -> "WedgeVector":
        return cls.from_dict({tuple(k): Fraction(str(v)) for k, v in data}, nu, e)


def apply_op(op: str, i: int, v: WedgeVector) -> WedgeVector:
    """Leibniz action of ``e_i`` or ``f_i`` followed by straightening."""
    out: Dict[Weight, Fraction] = {}
    for lam, c in v.terms:
        for pos, r in enumerate(lam):
            t = u_action(op, i, r, v.e)
            if t is None:
                continue
            new = lam[:pos] + (t,) + lam[pos + 1:]
            out[new] = out.get(new, Fraction(0)) + c
    return WedgeVector.from_dict(out, v.nu, v.e)


def apply_h(i: int, v: WedgeVector) -> WedgeVector:
    out = {lam: c * sum(h_eigenvalue(i, r, v.e) for r in lam) for lam, c in v.terms}
    return WedgeVector.from_dict(out, v.nu, v.e)


def apply_word(word: Sequence[Tuple[str, int]], v: WedgeVector) -> WedgeVector:
    """Apply ``word[0]`` first."""
    for op, i in word:
        v = apply_op(op, i, v)
    return v


def wedge_weight(lam: Sequence[int], e: int) -> WeightVector:
    return wt_e(lam, e)


def wedge_basis(nu: Sequence[int], lo: int, hi: int) -> List[Weight]:
    """Normalized wedges with every entry in ``[lo, hi)``."""
    pieces = []
    for n in nu:
        pieces.append([tuple(sorted(c, reverse=True)) for c in itertools.combinations(range(lo, hi), n)])
    return [tuple(itertools.chain.from_iterable(p)) for p in itertools.product(*pieces)]


# --------------------------------------------------------------------------
# Multipartitions and residues


@dataclass(frozen=True)
class Multipartition:
    components: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for p in self.components:
            if any(x <= 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
                raise DomainError(f"{p} is not a partition")

    @classmethod
    def of(cls, *parts: Sequence[int]) -> "Multipartition":
        return cls(tuple(tuple(x for x in p if x) for p in parts))

    @property
    def level(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(sum(p) for p in self.components)

    def boxes(self) -> List[Tuple[int, int, int]]:
        """``(i, j, r)``: row, column (1-based) and component (1-based)."""
        return [(i, j, r + 1) for r, p in enumerate(self.components)
                for i, row in enumerate(p, start=1) for j in range(1, row + 1)]

    def is_admissible(self, nu: Sequence[int]) -> bool:
        return len(nu) == self.level and all(len(p) <= n for p, n in zip(self.components, nu))

    def transpose(self) -> "Multipartition":
        """Reverse the components and conjugate each one."""
        def conj(p):
            return tuple(sum(1 for x in p if x > c) for c in range(p[0])) if p else ()
        return Multipartition(tuple(conj(p) for p in reversed(self.components)))

    def to_weight(self, nu: Sequence[int]) -> Weight:
        """``lam + rho_nu`` with each component padded to ``nu_r`` entries."""
        if not self.is_admissible(nu):
            raise DomainError("multipartition has too many rows for nu")
        padded = []
        for p, n in zip(self.components, nu):
            padded.extend(list(p) + [0] * (n - len(p)))
        return tuple(a + b for a, b in zip(padded, rho_nu(nu)))

    @classmethod
    def from_weight(cls, lam: Sequence[int], nu: Sequence[int]) -> "Multipartition":
        rho = rho_nu(nu)
        diff = [a - b for a, b in zip(lam, rho)]
        comps, pos = [], 0
        for n in nu:
            comps.append(tuple(x for x in diff[pos:pos + n]))
            pos += n
        for c in comps:
            if any(x < 0 for x in c) or any(c[i] < c[i + 1] for i in range(len(c) - 1)):
                raise DomainError("weight is not of the form multipartition + rho")
        return cls.of(*comps)

    def to_json(self) -> List[List[int]]:
        return [list(p) for p in self.components]


def box_residue(i: int, j: int, r: int, nu: Sequence[int], e: int) -> int:
    return (nu[r - 1] + j - i) % e


def residue(lam: Multipartition, nu: Sequence[int], e: int, deformed: bool = False) -> RootVector:
    """Sum of ``alpha_{res(b)}`` over the boxes; deformed uses ``(nu_r + j - i, r)``."""
    if lam.level != len(nu):
        raise DomainError("level of the multipartition does not match nu")
    out: Dict = {}
    for i, j, r in lam.boxes():
        key = (nu[r - 1] + j - i, r) if deformed else (nu[r - 1] + j - i) % e
        out[key] = out.get(key, 0) + 1
    return RootVector.of(out)


def partitions(n: int, max_part: Optional[int] = None) -> List[Tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def multipartitions(d: int, l: int) -> List[Multipartition]:
    out = []
    for sizes in itertools.product(range(d + 1), repeat=l):
        if sum(sizes) != d:
            continue
        for parts in itertools.product(*(partitions(s) for s in sizes)):
            out.append(Multipartition(tuple(parts)))
    return out


def block_enumerate(d: int, alpha: Optional[RootVector], nu: Sequence[int], e: int) -> List[Multipartition]:
    """``l``-partitions of ``d`` with residue ``alpha`` (all of them if ``alpha`` is None)."""
    if alpha is not None and alpha.height != d:
        raise DomainError("height of alpha must equal d")
    out = multipartitions(d, len(nu))
    if alpha is None:
        return out
    return [m for m in out if residue(m, nu, e) == alpha]


def blocks_by_residue(d: int, nu: Sequence[int], e: int) -> Dict[RootVector, List[Multipartition]]:
    out: Dict[RootVector, List[Multipartition]] = {}
    for m in multipartitions(d, len(nu)):
        out.setdefault(residue(m, nu, e), []).append(m)
    return out


def addable_boxes(lam: Multipartition, nu: Sequence[int], e: int, i: int) -> List[Multipartition]:
    """Admissible multipartitions obtained by adding one box of residue ``i``."""
    out = []
    for r, p in enumerate(lam.components):
        rows = list(p) + [0]
        for row in range(len(rows)):
            if row > 0 and rows[row - 1] <= rows[row]:
                continue
            if (nu[r] + rows[row] + 1 - (row + 1) - i) % e:
                continue
            new = rows[:]
            new[row] += 1
            comps = list(lam.components)
            comps[r] = tuple(x for x in new if x)
            m = Multipartition(tuple(comps))
            if m.is_admissible(nu):
                out.append(m)
    return out


# --------------------------------------------------------------------------
# Level-rank embedding and intertwining


def levelrank_embed(v: WedgeVector, k: int) -> WedgeVector:
    e = v.e
    return WedgeVector.from_dict({tuple(upsilon(r, e, k) for r in lam): c for lam, c in v.terms}, v.nu, e + 1)


def _commutator(a: Tuple[str, int], b: Tuple[str, int], v: WedgeVector) -> WedgeVector:
    """``(a b - b a) v`` with ``b`` applied first in the first term."""
    return apply_word([b, a], v) - apply_word([a, b], v)


def image_operator(op: str, r: int, k: int, e: int, v: WedgeVector) -> WedgeVector:
    """The expression in the level ``e + 1`` generators matching ``op_r``."""
    if r < k:
        return apply_op(op, r, v)
    if r > k:
        return apply_op(op, r + 1, v)
    if op == "f":
        return _commutator(("f", k + 1), ("f", k), v)
    return _commutator(("e", k), ("e", k + 1), v)


@dataclass
class CheckReport:
    name: str
    checked: int
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked,
                "counterexample": self.counterexample}


def intertwining_check(k: int, nu: Sequence[int], e: int, lo: Optional[int] = None,
                       hi: Optional[int] = None) -> CheckReport:
    """Compare ``embed . op_r`` with its level ``e + 1`` image on a window of wedges."""
    if e < 2 or not 0 <= k <= e - 1:
        raise DomainError("need e >= 2 and 0 <= k <= e - 1")
    lo = -(e + 1) if lo is None else lo
    hi = e + 1 if hi is None else hi
    count = 0
    for lam in wedge_basis(nu, lo, hi):
        v = WedgeVector.basis(lam, nu, e)
        ev = levelrank_embed(v, k)
        for op in ("f", "e"):
            for r in range(e):
                left = levelrank_embed(apply_op(op, r, v), k)
                right = image_operator(op, r, k, e, ev)
                count += 1
                if left != right:
                    return CheckReport("intertwining", count, {
                        "wedge": list(lam), "op": op, "r": r,
                        "left": left.to_json(), "right": right.to_json()})
    return CheckReport("intertwining", count)


def chevalley_check(nu: Sequence[int], e: int, lo: int, hi: int, max_dim: int = 200) -> CheckReport:
    """``[e_i, f_j] = delta_ij h_i`` on the weight spaces of a window.

    Operators are applied to basis vectors exactly, so truncation at the
    window edges does not interfere.  Weight spaces with more than
    ``max_dim`` window vectors are skipped.
    """
    spaces: Dict = {}
    for lam in wedge_basis(nu, lo, hi):
        key = (wt_e(lam, e), sum(lam))
        spaces.setdefault(key, []).append(lam)
    count = 0
    for lams in spaces.values():
        if len(lams) > max_dim:
            continue
        for lam in lams:
            v = WedgeVector.basis(lam, nu, e)
            for i in range(e):
                for j in range(e):
                    lhs = apply_word([("f", j), ("e", i)], v) - apply_word([("e", i), ("f", j)], v)
                    rhs = apply_h(i, v) if i == j else WedgeVector.zero(nu, e)
                    count += 1
                    if lhs != rhs:
                        return CheckReport("chevalley", count, {"wedge": list(lam), "i": i, "j": j})
    return CheckReport("chevalley", count)


def box_adjacency_check(nu: Sequence[int], e: int, max_size: int) -> CheckReport:
    """``f_i`` on ``lam + rho_nu`` hits exactly the weights of ``lam`` plus an ``i``-box."""
    count = 0
    for d in range(max_size + 1):
        for lam in multipartitions(d, len(nu)):
            if not lam.is_admissible(nu):
                continue
            v = WedgeVector.basis(lam.to_weight(nu), nu, e)
            for i in range(e):
                got = {k: abs(c) for k, c in apply_op("f", i, v).terms}
                want = {m.to_weight(nu): Fraction(1) for m in addable_boxes(lam, nu, e, i)}
                count += 1
                if got != want:
                    return CheckReport("box adjacency", count, {"multipartition": lam.to_json(), "i": i})
    return CheckReport("box adjacency", count)
