"""The extended affine Weyl group of type A acting on integer weights.

Elements are stored as affine permutations: bijections ``w`` of the
integers with ``w(i + N) = w(i) + N``, recorded by the window
``(w(1), ..., w(N))``.  The simple reflection ``s_r`` swaps the residue
classes of ``r`` and ``r + 1`` (``s_0`` swaps ``0`` and ``1``), and the
rotation ``pi`` is ``i -> i - 1``.  Lengths count inversions, so rotations
have length zero.

The negative level-``e`` action of ``w`` on ``lam`` in ``Z^N`` is
``(w lam)_i = hat(w^{-1}(i))`` where ``hat(j + N m) = lam_j + e m``.  The
positive action is ``lam -> -w(-lam)``.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import DomainError, VerificationError
from .lattice_quiver import upsilon_weight, wt_e

Weight = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class AffinePermutation:
    window: Tuple[int, ...]

    def __post_init__(self):
        N = len(self.window)
        if N == 0:
            raise DomainError("empty window")
        if sorted(x % N for x in self.window) != list(range(N)):
            raise DomainError(f"window {self.window} is not an affine permutation")

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, N: int) -> "AffinePermutation":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def simple(cls, r: int, N: int) -> "AffinePermutation":
        if N < 2:
            raise DomainError("simple reflections need N >= 2")
        if not 0 <= r < N:
            raise DomainError(f"simple reflection index {r} out of range")
        w = list(range(1, N + 1))
        if r == 0:
            w[0], w[N - 1] = 0, N + 1
        else:
            w[r - 1], w[r] = r + 1, r
        return cls(tuple(w))

    @classmethod
    def rotation(cls, N: int, power: int = 1) -> "AffinePermutation":
        """``pi^power``; ``pi`` maps ``i`` to ``i - 1``."""
        return cls(tuple(i - power for i in range(1, N + 1)))

    @classmethod
    def from_word(cls, word: Sequence, N: int) -> "AffinePermutation":
        """Product of letters from left to right.

        A letter is an integer ``r`` for ``s_r``, ``"pi"`` or ``"pi-"``.
        """
        w = cls.identity(N)
        for a in word:
            if a == "pi":
                g = cls.rotation(N, 1)
            elif a == "pi-":
                g = cls.rotation(N, -1)
            else:
                g = cls.simple(int(a), N)
            w = w * g
        return w

    @classmethod
    def parse(cls, text: str, N: int) -> "AffinePermutation":
        """Parse ``"id"``, ``"s1*s0*pi"`` or ``"s1s0"`` style words."""
        text = text.replace(" ", "").replace("*", "")
        if text in ("", "id", "1", "e"):
            return cls.identity(N)
        letters = []
        i = 0
        while i < len(text):
            if text.startswith("pi-", i):
                letters.append("pi-")
                i += 3
            elif text.startswith("pi", i):
                letters.append("pi")
                i += 2
            elif text[i] == "s":
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                if j == i + 1:
                    raise DomainError(f"bad word {text!r}")
                letters.append(int(text[i + 1:j]))
                i = j
            else:
                raise DomainError(f"bad word {text!r}")
        return cls.from_word(letters, N)

    # basic structure ---------------------------------------------------
    @property
    def N(self) -> int:
        return len(self.window)

    def __call__(self, j: int) -> int:
        N = self.N
        m, r = divmod(j - 1, N)
        return self.window[r] + N * m

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        if other.N != self.N:
            raise DomainError("rank mismatch")
        return AffinePermutation(tuple(self(other(i)) for i in range(1, self.N + 1)))

    def inverse(self) -> "AffinePermutation":
        N = self.N
        inv = [0] * N
        for i, v in enumerate(self.window, start=1):
            m, r = divmod(v - 1, N)
            inv[r] = i - N * m
        return AffinePermutation(tuple(inv))

    def __pow__(self, n: int) -> "AffinePermutation":
        base = self if n >= 0 else self.inverse()
        out = AffinePermutation.identity(self.N)
        for _ in range(abs(n)):
            out = out * base
        return out

    @property
    def shift(self) -> int:
        """``n`` with ``w`` in the coset of ``pi^n``."""
        total = sum(v - i for i, v in enumerate(self.window, start=1))
        if total % self.N:
            raise VerificationError("inconsistent window sum")
        return -total // self.N

    def in_affine_subgroup(self) -> bool:
        return self.shift == 0

    @functools.cached_property
    def length(self) -> int:
        N = self.N
        w = self.window
        total = 0
        for i in range(N):
            for j in range(N):
                diff = w[i] - w[j]
                # count m >= m0 with w_i > w_j + N m, where j + N m > i
                m0 = 1 if j <= i else 0
                if diff - 1 < N * m0:
                    continue
                total += (diff - 1) // N - m0 + 1
        return total

    def right_descent(self, r: int) -> bool:
        return self(r) > self(r + 1)

    def left_descent(self, r: int) -> bool:
        inv = self.inverse()
        return inv(r) > inv(r + 1)

    def right_descents(self) -> List[int]:
        return [r for r in range(self.N) if self.N > 1 and self.right_descent(r)]

    def left_descents(self) -> List[int]:
        return [r for r in range(self.N) if self.N > 1 and self.left_descent(r)]

    def times_simple(self, r: int) -> "AffinePermutation":
        return self * AffinePermutation.simple(r, self.N)

    def simple_times(self, r: int) -> "AffinePermutation":
        return AffinePermutation.simple(r, self.N) * self

    def reduced_word(self) -> Tuple[int, Tuple[int, ...]]:
        """``(n, (a_1, ..., a_k))`` with ``w = pi^n s_{a_1} ... s_{a_k}`` reduced."""
        letters: List[int] = []
        w = self
        while w.length > 0:
            r = w.right_descents()[0]
            letters.append(r)
            w = w.times_simple(r)
        n = w.shift
        if w != AffinePermutation.rotation(self.N, n):
            raise VerificationError("length zero element is not a rotation")
        return n, tuple(reversed(letters))

    def word_string(self) -> str:
        n, word = self.reduced_word()
        parts = []
        if n:
            parts.append("pi" if n == 1 else ("pi-" if n == -1 else f"pi^{n}"))
        parts.extend(f"s{a}" for a in word)
        return "*".join(parts) if parts else "id"

    def to_json(self) -> dict:
        return {"window": list(self.window), "n": self.shift, "length": self.length}

    def __repr__(self):
        return f"W[{self.word_string()}]"

    # actions -----------------------------------------------------------
    def act(self, lam: Sequence[int], e: int, sign: str = "negative") -> Weight:
        if len(lam) != self.N:
            raise DomainError("weight length does not match N")
        if sign == "positive":
            return tuple(-x for x in self.act(tuple(-x for x in lam), e, "negative"))
        if sign != "negative":
            raise DomainError("sign must be 'negative' or 'positive'")
        N = self.N
        inv = self.inverse()
        out = []
        for i in range(1, N + 1):
            m, r = divmod(inv(i) - 1, N)
            out.append(lam[r] + e * m)
        return tuple(out)


def act(w: AffinePermutation, lam: Sequence[int], e: int, sign: str = "negative") -> Weight:
    return w.act(lam, e, sign)


def identity(N: int) -> AffinePermutation:
    return AffinePermutation.identity(N)


def s(r: int, N: int) -> AffinePermutation:
    return AffinePermutation.simple(r, N)


def pi(N: int, power: int = 1) -> AffinePermutation:
    return AffinePermutation.rotation(N, power)


# --------------------------------------------------------------------------
# Anti-dominance


def is_antidominant(lam: Sequence[int], e: int) -> bool:
    lam = tuple(lam)
    return all(lam[i] <= lam[i + 1] for i in range(len(lam) - 1)) and lam[-1] <= lam[0] + e


def is_dominant(lam: Sequence[int], e: int) -> bool:
    lam = tuple(lam)
    return all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1)) and lam[-1] >= lam[0] - e


def antidominant_rep(lam: Sequence[int], e: int) -> Tuple[Weight, AffinePermutation]:
    """``(lam_ad, w)`` with ``lam_ad`` anti-dominant and ``w(lam_ad) = lam``.

    Only reflections are used, so ``w`` lies in the non-extended group.
    """
    lam = tuple(lam)
    N = len(lam)
    w = identity(N)
    cur = lam
    steps = 0
    while not is_antidominant(cur, e):
        r = next((i for i in range(1, N) if cur[i - 1] > cur[i]), None)
        if r is None:
            r = 0
        g = s(r, N)
        cur = g.act(cur, e)
        w = w * g
        steps += 1
        if steps > 10_000:
            raise VerificationError("anti-dominant reduction did not terminate")
    if w.act(cur, e) != lam:
        raise VerificationError("anti-dominant witness is wrong")
    return cur, w


def orbit_contains(lam: Sequence[int], other: Sequence[int], e: int) -> Optional[AffinePermutation]:
    """An element ``w`` with ``w(lam) = other`` or ``None``."""
    lam, other = tuple(lam), tuple(other)
    if len(lam) != len(other):
        return None
    N = len(lam)
    a, wa = antidominant_rep(lam, e)
    b, wb = antidominant_rep(other, e)
    diff = sum(b) - sum(a)
    if diff % e:
        return None
    # pi raises the entry sum by e and preserves anti-dominance, and each
    # orbit of the non-extended group has one anti-dominant weight
    rot = pi(N, diff // e)
    if rot.act(a, e) != b:
        return None
    # other = wb b = wb rot a = wb rot wa^{-1} lam
    w = wb * rot * wa.inverse()
    if w.act(lam, e) != other:
        raise VerificationError("orbit witness is wrong")
    return w


def orbit_in_box(lam: Sequence[int], e: int, lo: int, hi: int) -> List[Weight]:
    """Weights of the orbit of ``lam`` with all entries in ``[lo, hi]``."""
    target = wt_e(lam, e)
    out = []
    for cand in itertools.product(range(lo, hi + 1), repeat=len(lam)):
        if wt_e(cand, e) == target and orbit_contains(lam, cand, e) is not None:
            out.append(cand)
    return out


# --------------------------------------------------------------------------
# Bruhat order


@functools.lru_cache(maxsize=None)
def _leq_affine(x: AffinePermutation, y: AffinePermutation) -> bool:
    if x == y:
        return True
    if x.length >= y.length:
        return False
    r = y.left_descents()[0]
    sy = y.simple_times(r)
    if x.left_descent(r):
        return _leq_affine(x.simple_times(r), sy)
    return _leq_affine(x, sy)


def bruhat_leq(w1: AffinePermutation, w2: AffinePermutation) -> bool:
    """Bruhat order, comparable only inside one coset of the rotations."""
    if w1.N != w2.N:
        return False
    n = w1.shift
    if w2.shift != n:
        return False
    rot = pi(w1.N, -n)
    return _leq_affine(rot * w1, rot * w2)


@functools.lru_cache(maxsize=None)
def _interval_affine(y: AffinePermutation) -> FrozenSet[AffinePermutation]:
    if y.length == 0:
        return frozenset([y])
    r = y.left_descents()[0]
    below = _interval_affine(y.simple_times(r))
    return below | frozenset(x.simple_times(r) for x in below)


def lower_interval(v: AffinePermutation) -> List[AffinePermutation]:
    """``{w : w <= v}`` sorted by length then window."""
    n = v.shift
    rot = pi(v.N, n)
    base = _interval_affine(pi(v.N, -n) * v)
    return sorted((rot * x for x in base), key=lambda w: (w.length, w.window))


def elements_up_to_length(N: int, max_length: int, shifts: Iterable[int] = (0,)) -> List[AffinePermutation]:
    """All elements of length at most ``max_length`` in the given rotation cosets."""
    out: Set[AffinePermutation] = set()
    for n in shifts:
        layer = {pi(N, n)}
        seen = set(layer)
        for _ in range(max_length):
            nxt = set()
            for w in layer:
                for r in range(N):
                    u = w.times_simple(r)
                    if u.length == w.length + 1 and u not in seen:
                        nxt.add(u)
            seen |= nxt
            layer = nxt
        out |= seen
    return sorted(out, key=lambda w: (w.length, w.shift, w.window))


def random_element(N: int, max_length: int, rng: random.Random, max_shift: int = 0) -> AffinePermutation:
    w = pi(N, rng.randint(-max_shift, max_shift))
    for _ in range(rng.randint(0, max_length)):
        u = w.times_simple(rng.randrange(N))
        if u.length <= max_length:
            w = u
    return w


# --------------------------------------------------------------------------
# Parabolic data


def base_point(mu: Sequence[int], convention: str = "standard") -> Weight:
    """``1_mu``: ``(1^{mu_1}, ..., e^{mu_e})`` or, with ``convention="zero"``,
    ``(0^{mu_e}, 1^{mu_1}, ..., (e-1)^{mu_{e-1}})``."""
    e = len(mu)
    if convention == "standard":
        return tuple(itertools.chain.from_iterable([i + 1] * m for i, m in enumerate(mu)))
    if convention == "zero":
        parts = [[0] * mu[e - 1]] + [[i + 1] * mu[i] for i in range(e - 1)]
        return tuple(itertools.chain.from_iterable(parts))
    raise DomainError(f"unknown base point convention {convention!r}")


def positive_base_point(mu: Sequence[int]) -> Weight:
    """``1^+_mu = (e^{mu_1}, ..., 1^{mu_e})``."""
    e = len(mu)
    return tuple(itertools.chain.from_iterable([e - i] * m for i, m in enumerate(mu)))


def is_nu_dominant(lam: Sequence[int], nu: Sequence[int]) -> bool:
    """Strictly decreasing inside each block of the composition ``nu``."""
    if sum(nu) != len(lam):
        raise DomainError("composition size does not match the weight")
    pos = 0
    for n in nu:
        for r in range(pos, pos + n - 1):
            if lam[r] <= lam[r + 1]:
                return False
        pos += n
    return True


@dataclass(frozen=True)
class ParabolicData:
    """Stabilizer data of the base point of a composition at some level.

    ``comp`` is the composition whose base point is stabilized, ``level``
    the level of the action, ``sign`` selects the negative or positive
    action and ``convention`` the base point convention.
    """

    comp: Tuple[int, ...]
    level: int
    sign: str = "negative"
    convention: str = "standard"

    @property
    def N(self) -> int:
        return sum(self.comp)

    @property
    def point(self) -> Weight:
        if self.sign == "positive":
            return positive_base_point(self.comp)
        return base_point(self.comp, self.convention)

    @property
    def generators(self) -> Tuple[int, ...]:
        p = self.point
        gens = tuple(r for r in range(1, self.N) if p[r - 1] == p[r])
        if self.N >= 2 and s(0, self.N).act(p, self.level, self.sign) == p:
            gens = (0,) + gens
        return gens

    @functools.cached_property
    def group(self) -> Tuple[AffinePermutation, ...]:
        seen = {identity(self.N)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for w in frontier:
                for r in self.generators:
                    u = w.times_simple(r)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(seen, key=lambda w: (w.length, w.window)))

    @property
    def longest(self) -> AffinePermutation:
        return max(self.group, key=lambda w: w.length)

    def is_min_rep(self, w: AffinePermutation) -> bool:
        return all(w(r) < w(r + 1) for r in self.generators)

    def is_max_rep(self, w: AffinePermutation) -> bool:
        return all(w(r) > w(r + 1) for r in self.generators)

    def min_rep(self, w: AffinePermutation) -> AffinePermutation:
        return min((w * x for x in self.group), key=lambda u: (u.length, u.window))

    def max_rep(self, w: AffinePermutation) -> AffinePermutation:
        return max((w * x for x in self.group), key=lambda u: (u.length, u.window))

    def weight(self, w: AffinePermutation) -> Weight:
        return w.act(self.point, self.level, self.sign)

    def is_stabilizer(self, candidates: Iterable[AffinePermutation]) -> bool:
        """Check that every candidate fixing the base point lies in the group."""
        grp = set(self.group)
        for w in candidates:
            fixes = self.weight(w) == self.point
            if fixes != (w in grp):
                return False
        return True


def parabolic(mu: Sequence[int], e: Optional[int] = None, convention: str = "standard") -> ParabolicData:
    return ParabolicData(tuple(mu), e if e is not None else len(mu), "negative", convention)


def positive_parabolic(mu: Sequence[int], level: Optional[int] = None) -> ParabolicData:
    return ParabolicData(tuple(mu), level if level is not None else len(mu), "positive")


@dataclass
class CosetPoset:
    kind: str
    bound: AffinePermutation
    elements: List[AffinePermutation]
    covers: List[Tuple[int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w):
        return w in set(self.elements)

    def as_set(self) -> Set[AffinePermutation]:
        return set(self.elements)

    def lengths(self) -> List[int]:
        return [w.length for w in self.elements]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "bound": self.bound.to_json(),
            "elements": [w.to_json() for w in self.elements],
            "covers": [list(c) for c in self.covers],
        }


def _covers(elements: List[AffinePermutation]) -> List[Tuple[int, int]]:
    out = []
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            if x.length < y.length and bruhat_leq(x, y):
                between = any(
                    x.length < z.length < y.length and bruhat_leq(x, z) and bruhat_leq(z, y)
                    for z in elements
                )
                if not between:
                    out.append((i, j))
    return out


def coset_reps(
    data: ParabolicData,
    bound: AffinePermutation,
    kind: str = "min",
    dominance: Optional[Sequence[int]] = None,
    with_covers: bool = False,
) -> CosetPoset:
    """Truncated coset representatives ``{w <= bound}``.

    ``kind="min"`` keeps shortest representatives, ``kind="max"`` longest
    ones.  ``dominance`` keeps ``w`` with ``w(base point)`` dominant for that
    composition.
    """
    if kind not in ("min", "max"):
        raise DomainError("kind must be 'min' or 'max'")
    if bound.N != data.N:
        raise DomainError("bound has the wrong rank")
    test = data.is_min_rep if kind == "min" else data.is_max_rep
    elems = [w for w in lower_interval(bound) if test(w)]
    if dominance is not None:
        elems = [w for w in elems if is_nu_dominant(data.weight(w), dominance)]
    poset = CosetPoset(kind, bound, elems)
    if with_covers:
        poset.covers = _covers(elems)
    return poset


def filtered_reps(
    data: ParabolicData,
    candidates: Iterable[AffinePermutation],
    kind: str = "min",
    dominance: Optional[Sequence[int]] = None,
) -> Set[AffinePermutation]:
    test = data.is_min_rep if kind == "min" else data.is_max_rep
    out = set()
    for w in candidates:
        if test(w) and (dominance is None or is_nu_dominant(data.weight(w), dominance)):
            out.add(w)
    return out


# --------------------------------------------------------------------------
# The composition obtained by moving one unit from k to k+1


def shifted_composition(mu: Sequence[int], k: int) -> Tuple[int, ...]:
    """``mu - alpha_k``: the coefficient of ``eps_k`` drops by one and that of
    ``eps_{k+1}`` rises by one (``mu_e`` is the coefficient of ``eps_0``)."""
    e = len(mu)
    out = list(mu)
    a = (k - 1) % e
    b = k % e
    out[a] -= 1
    out[b] += 1
    if out[a] < 0:
        raise DomainError("mu - alpha_k leaves the nonnegative cone")
    return tuple(out)


def position_of(k: int, e: int) -> int:
    """Tuple index (0-based) holding the coefficient of ``eps_k``."""
    return (k - 1) % e


def parabolic_inclusion(mu: Sequence[int], mu_prime: Sequence[int], convention: str = "standard") -> bool:
    a = parabolic(mu, convention=convention)
    b = parabolic(mu_prime, convention=convention)
    return set(a.group) <= set(b.group)


def relative_min_reps(small: ParabolicData, big: ParabolicData) -> List[AffinePermutation]:
    """Shortest representatives of ``W_big / W_small``."""
    if not set(small.group) <= set(big.group):
        raise DomainError("the smaller stabilizer is not contained in the bigger one")
    return sorted((z for z in big.group if small.is_min_rep(z)), key=lambda w: (w.length, w.window))


# --------------------------------------------------------------------------
# Index set identities


@dataclass
class SetComparison:
    name: str
    left: Set[AffinePermutation]
    right: Set[AffinePermutation]

    @property
    def equal(self) -> bool:
        return self.left == self.right

    def witnesses(self) -> dict:
        return {
            "only_left": sorted(w.word_string() for w in self.left - self.right),
            "only_right": sorted(w.word_string() for w in self.right - self.left),
        }

    def to_json(self) -> dict:
        return {"name": self.name, "equal": self.equal, "size_left": len(self.left),
                "size_right": len(self.right), **self.witnesses()}


def convention_for(k: int) -> str:
    """Base point convention that makes the stabilizers for ``mu`` and
    ``mu - alpha_k`` nested: the ``0``-based one when ``k = 0``."""
    return "zero" if k == 0 else "standard"


def position_blocks(mu: Sequence[int], convention: str = "standard") -> Tuple[int, ...]:
    """Block sizes of equal entries of the base point, left to right."""
    point = base_point(mu, convention)
    return tuple(len(list(g)) for _, g in itertools.groupby(point))


def _require_inclusion(mu, mu_prime, convention):
    if not parabolic_inclusion(mu, mu_prime, convention):
        raise DomainError(f"stabilizer of 1_mu for mu={tuple(mu)} is not contained in that of mu'={tuple(mu_prime)}")


def inverse_bijection(mu: Sequence[int], nu: Sequence[int], v: AffinePermutation,
                      convention: str = "standard") -> SetComparison:
    """``{w^{-1} : w in ^vJ^nu_mu}`` against ``^{v^{-1}}J^mu_{nu,+}``."""
    e, l = len(mu), len(nu)
    neg = parabolic(mu, e, convention)
    pos = positive_parabolic(nu, l)
    left = {w.inverse() for w in coset_reps(neg, v, "min", nu).elements}
    right = coset_reps(pos, v.inverse(), "max", position_blocks(mu, convention)).as_set()
    return SetComparison("inverse bijection", left, right)


def inverse_bijection_ball(mu: Sequence[int], nu: Sequence[int], max_length: int, max_shift: int = 1,
                           convention: str = "standard") -> SetComparison:
    """Untruncated bijection restricted to a length ball (inversion preserves length)."""
    e, l = len(mu), len(nu)
    N = sum(mu)
    ball = elements_up_to_length(N, max_length, range(-max_shift, max_shift + 1))
    neg = parabolic(mu, e, convention)
    pos = positive_parabolic(nu, l)
    left = {w.inverse() for w in filtered_reps(neg, ball, "min", nu)}
    right = filtered_reps(pos, ball, "max", position_blocks(mu, convention))
    return SetComparison("inverse bijection (ball)", left, right)


def truncation_identity(mu: Sequence[int], mu_prime: Sequence[int], nu: Sequence[int],
                        v: AffinePermutation, convention: str = "standard") -> SetComparison:
    """``^{w_mu' v^{-1}}J^{mu'}_{nu,+}`` against ``^{w_mu v^{-1}}J^mu_{nu,+} & J^{mu'}_{nu,+}``."""
    _require_inclusion(mu, mu_prime, convention)
    l = len(nu)
    w_mu = parabolic(mu, convention=convention).longest
    w_mup = parabolic(mu_prime, convention=convention).longest
    pos = positive_parabolic(nu, l)
    blocks = position_blocks(mu, convention)
    blocks_p = position_blocks(mu_prime, convention)
    left = coset_reps(pos, w_mup * v.inverse(), "max", blocks_p).as_set()
    big = coset_reps(pos, w_mu * v.inverse(), "max", blocks).as_set()
    right = filtered_reps(pos, big, "max", blocks_p)
    return SetComparison("truncation intersection", left, right)


def index_set_identities(mu: Sequence[int], mu_prime: Sequence[int], nu: Sequence[int],
                         x: AffinePermutation, convention: str = "standard") -> dict:
    """Both index set identities for the bound ``v = x w_{mu'}``.

    ``x`` must lie in ``J^nu_{mu'}``.
    """
    _require_inclusion(mu, mu_prime, convention)
    neg_p = parabolic(mu_prime, convention=convention)
    if not (neg_p.is_min_rep(x) and is_nu_dominant(neg_p.weight(x), nu)):
        raise DomainError("x is not a nu-dominant shortest representative for mu'")
    neg = parabolic(mu, convention=convention)
    w_mu = neg.longest
    w_mup = neg_p.longest
    v = x * w_mup
    vb = v * w_mu
    checks = []
    member = neg.is_min_rep(vb) and is_nu_dominant(neg.weight(vb), nu)
    checks.append(SetComparison("v w_mu in J^nu_mu", {vb} if member else set(), {vb}))
    small = filtered_reps(neg, coset_reps(neg_p, v, "min", nu).elements, "min", nu)
    checks.append(SetComparison("J^nu_mu' inside J^nu_mu", small, set(coset_reps(neg_p, v, "min", nu).elements)))
    checks.append(inverse_bijection(mu, nu, vb, convention))
    checks.append(inverse_bijection(mu_prime, nu, x, convention))
    checks.append(truncation_identity(mu, mu_prime, nu, v, convention))
    return {
        "v": v.to_json(),
        "checks": [c.to_json() for c in checks],
        "all_equal": all(c.equal for c in checks),
    }


# --------------------------------------------------------------------------
# Equivariance of the level change


def upsilon_equivariance_check(lam: Sequence[int], w: AffinePermutation, e: int, k: int) -> bool:
    left = upsilon_weight(w.act(lam, e), e, k)
    right = w.act(upsilon_weight(lam, e, k), e + 1)
    if left != right:
        return False
    if is_antidominant(lam, e) and not is_antidominant(upsilon_weight(lam, e, k), e + 1):
        return False
    return True
