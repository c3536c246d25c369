"""Affine Hecke algebras of type A in the Bernstein basis and their
cyclotomic quotients.

The algebra has generators ``T_1..T_{d-1}`` and invertible ``X_1..X_d``
with ``(T_r - q)(T_r + 1) = 0``, the braid relations, commuting ``X``'s
and ``T_r X_{r+1} = X_r T_r + (q - 1) X_{r+1}``.  Every element is a
unique combination of ``X^a T_w`` with ``a`` in ``Z^d`` and ``w`` in
``S_d``.

Coefficients are exact: by default ``q`` is a ``Fraction``; any object
supporting field arithmetic (for example a sympy symbol) can be used by
passing a ``simplify`` callable that brings coefficients to a canonical
form.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import DegenerateParameters, DomainError, VerificationError
from .exact import RowReducer, fraction_str
from .fock_space import Multipartition, multipartitions

Perm = Tuple[int, ...]
Exps = Tuple[int, ...]
Key = Tuple[Exps, Perm]


# --------------------------------------------------------------------------
# Symmetric group helpers (permutations of 0..d-1 in one-line notation)


def perm_length(w: Perm) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def left_simple(i: int, w: Perm) -> Perm:
    """``s_i w``: swap the values ``i - 1`` and ``i`` (``i`` is 1-based)."""
    a, b = i - 1, i
    return tuple(b if x == a else a if x == b else x for x in w)


def perm_inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, x in enumerate(w):
        out[x] = i
    return tuple(out)


def perm_compose(w: Perm, v: Perm) -> Perm:
    """``(w v)(j) = w(v(j))``."""
    return tuple(w[v[j]] for j in range(len(w)))


@functools.lru_cache(maxsize=None)
def reduced_word(w: Perm) -> Tuple[int, ...]:
    """``(i_1, ..., i_k)`` with ``w = s_{i_1} ... s_{i_k}``."""
    inv = perm_inverse(w)
    for i in range(1, len(w)):
        if inv[i - 1] > inv[i]:
            return (i,) + reduced_word(left_simple(i, w))
    return ()


def simple_perm(i: int, d: int) -> Perm:
    return left_simple(i, tuple(range(d)))


# --------------------------------------------------------------------------
# The algebra


class HeckeAlgebra:
    """Affine Hecke algebra of ``GL_d`` with parameter ``q``."""

    def __init__(self, d: int, q=Fraction(2), simplify: Optional[Callable] = None):
        if d < 1:
            raise DomainError("d must be positive")
        if q == 0:
            raise DomainError("q must be nonzero")
        self.d = d
        self.q = q if simplify is not None else Fraction(q)
        self._simplify = simplify or (lambda c: c)

    @classmethod
    def symbolic(cls, d: int) -> "HeckeAlgebra":
        """Generic ``q`` as a sympy symbol; coefficients are rational functions."""
        import sympy

        return cls(d, sympy.Symbol("q"), simplify=sympy.cancel)

    def norm(self, c):
        return self._simplify(c)

    # constructors --------------------------------------------------------
    def element(self, terms: Dict[Key, object]) -> "HeckeElement":
        out = {}
        for k, c in terms.items():
            c = self.norm(c)
            if c != 0:
                out[k] = c
        return HeckeElement(self, out)

    @property
    def _id(self) -> Perm:
        return tuple(range(self.d))

    def one(self) -> "HeckeElement":
        return self.element({((0,) * self.d, self._id): 1})

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    def scalar(self, c) -> "HeckeElement":
        return self.element({((0,) * self.d, self._id): c})

    def T(self, i: int) -> "HeckeElement":
        if not 1 <= i < self.d:
            raise DomainError(f"T_{i} does not exist for d={self.d}")
        return self.element({((0,) * self.d, simple_perm(i, self.d)): 1})

    def T_perm(self, w: Perm) -> "HeckeElement":
        return self.element({((0,) * self.d, tuple(w)): 1})

    def X(self, i: int, power: int = 1) -> "HeckeElement":
        if not 1 <= i <= self.d:
            raise DomainError(f"X_{i} does not exist for d={self.d}")
        a = [0] * self.d
        a[i - 1] = power
        return self.element({(tuple(a), self._id): 1})

    def monomial(self, a: Sequence[int], w: Optional[Sequence[int]] = None) -> "HeckeElement":
        return self.element({(tuple(a), tuple(w) if w is not None else self._id): 1})

    def t_inverse(self, i: int) -> "HeckeElement":
        qi = 1 / self.q
        return self.T(i) * qi + self.scalar(qi - 1)

    # multiplication ------------------------------------------------------
    def _divided(self, i: int, a: Exps) -> Dict[Exps, int]:
        """``X_{i+1} (X^a - X^{s_i a}) / (X_{i+1} - X_i)`` as exponent -> coefficient."""
        x, y = a[i - 1], a[i]
        out: Dict[Exps, int] = {}
        if x == y:
            return out
        n = abs(x - y)
        base = min(x, y)
        sign = -1 if x > y else 1
        for j in range(n):
            b = list(a)
            b[i - 1] = base + j
            b[i] = base + (n - 1 - j) + 1
            out[tuple(b)] = out.get(tuple(b), 0) + sign
        return out

    def _left_T(self, i: int, terms: Dict[Key, object]) -> Dict[Key, object]:
        """``T_i * x`` for ``x`` in normal form."""
        q = self.q
        out: Dict[Key, object] = {}

        def add(k, c):
            out[k] = out.get(k, 0) + c

        for (a, w), c in terms.items():
            sa = list(a)
            sa[i - 1], sa[i] = sa[i], sa[i - 1]
            sa = tuple(sa)
            # X^{s_i a} T_i T_w
            sw = left_simple(i, w)
            if perm_length(sw) > perm_length(w):
                add((sa, sw), c)
            else:
                add((sa, w), c * (q - 1))
                add((sa, sw), c * q)
            # (q - 1) X_{i+1} (X^a - X^{s_i a}) / (X_{i+1} - X_i) T_w
            for b, m in self._divided(i, a).items():
                add((b, w), c * (q - 1) * m)
        return {k: v for k, v in ((k, self.norm(v)) for k, v in out.items()) if v != 0}

    def multiply(self, x: "HeckeElement", y: "HeckeElement") -> "HeckeElement":
        if x.algebra is not self or y.algebra is not self:
            raise DomainError("elements belong to different algebras")
        out: Dict[Key, object] = {}
        cache: Dict[Perm, Dict[Key, object]] = {}
        for (a, w), c in x.terms.items():
            if w not in cache:
                cur = dict(y.terms)
                for i in reversed(reduced_word(w)):
                    cur = self._left_T(i, cur)
                cache[w] = cur
            for (b, v), m in cache[w].items():
                k = (tuple(p + r for p, r in zip(a, b)), v)
                out[k] = out.get(k, 0) + c * m
        return self.element(out)

    # random elements for property checks --------------------------------
    def random_element(self, rng: random.Random, terms: int = 3, exp_range: int = 1) -> "HeckeElement":
        perms = list(itertools.permutations(range(self.d)))
        out = {}
        for _ in range(terms):
            a = tuple(rng.randint(-exp_range, exp_range) for _ in range(self.d))
            out[(a, rng.choice(perms))] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        return self.element(out)


@dataclass(frozen=True, eq=False)
class HeckeElement:
    algebra: HeckeAlgebra
    terms: Dict[Key, object]

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self.algebra.element(out)

    __radd__ = __add__

    def __neg__(self):
        return self.algebra.element({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return self.algebra.multiply(self, other)
        return self.algebra.element({k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self.algebra.element({k: other * v for k, v in self.terms.items()})

    def _coerce(self, other) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return other
        return self.algebra.scalar(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            other = self.algebra.scalar(other)
        return (self - other).is_zero()

    def __hash__(self):
        return id(self)

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> List[dict]:
        def fmt(c):
            return fraction_str(c) if isinstance(c, (int, Fraction)) else str(c)
        return [{"a": list(a), "w": [x + 1 for x in w], "c": fmt(c)}
                for (a, w), c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, w), c in sorted(self.terms.items()):
            x = "".join(f"X{i + 1}^{p}" for i, p in enumerate(a) if p)
            word = reduced_word(w)
            t = "T" + ".".join(map(str, word)) if word else ""
            parts.append(f"({c}){x}{t}")
        return " + ".join(parts)


def multiply(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    return x.algebra.multiply(x, y)


def t_inverse(algebra: HeckeAlgebra, r: int) -> HeckeElement:
    return algebra.t_inverse(r)


# --------------------------------------------------------------------------
# The involution


def _im_generator(algebra: HeckeAlgebra, kind: str, i: int, power: int = 1) -> HeckeElement:
    if kind == "T":
        # -q T^{-1} = -T + (q - 1)
        return -algebra.T(i) + algebra.scalar(algebra.q - 1)
    return algebra.X(i, -power)


def involution_IM(x: HeckeElement, anti: bool = False) -> HeckeElement:
    """``T_r -> -q T_r^{-1}``, ``X_r -> X_r^{-1}`` extended multiplicatively.

    With ``anti=True`` products are reversed instead.  The generator images
    satisfy the defining relations read in either order, so both versions
    are well defined; ``involution_relation_check`` confirms this.
    """
    A = x.algebra
    out = A.zero()
    for (a, w), c in x.terms.items():
        factors = [A.monomial(tuple(-p for p in a))]
        factors += [_im_generator(A, "T", i) for i in reduced_word(w)]
        if anti:
            factors.reverse()
        prod = A.one()
        for f in factors:
            prod = prod * f
        out = out + prod * c
    return out


def defining_relations(algebra: HeckeAlgebra, images: Optional[Callable] = None,
                       reverse: bool = False) -> List[Tuple[str, HeckeElement]]:
    """Residuals of the defining relations evaluated on generator images.

    ``images(kind, i)`` returns the image of ``T_i`` (kind ``"T"``),
    ``X_i`` (kind ``"X"``) or ``X_i^{-1}`` (kind ``"Xinv"``).  With
    ``reverse`` every product is read right to left.
    """
    A = algebra
    q = A.q
    d = A.d
    if images is None:
        def images(kind, i):
            if kind == "T":
                return A.T(i)
            return A.X(i, 1 if kind == "X" else -1)

    def prod(*fs):
        fs = list(reversed(fs)) if reverse else list(fs)
        out = A.one()
        for f in fs:
            out = out * f
        return out

    T = lambda i: images("T", i)  # noqa: E731
    X = lambda i: images("X", i)  # noqa: E731
    out = []
    for r in range(1, d):
        out.append((f"quadratic T{r}", prod(T(r), T(r)) - T(r) * (q - 1) - A.scalar(q)))
        out.append((f"bernstein T{r}X{r + 1}",
                    prod(T(r), X(r + 1)) - prod(X(r), T(r)) - X(r + 1) * (q - 1)))
        for j in range(1, d + 1):
            if j not in (r, r + 1):
                out.append((f"T{r}X{j} commute", prod(T(r), X(j)) - prod(X(j), T(r))))
        for s in range(r + 1, d):
            if s == r + 1:
                out.append((f"braid {r},{s}", prod(T(r), T(s), T(r)) - prod(T(s), T(r), T(s))))
            else:
                out.append((f"T{r}T{s} commute", prod(T(r), T(s)) - prod(T(s), T(r))))
    for i in range(1, d + 1):
        out.append((f"X{i} invertible", prod(X(i), images("Xinv", i)) - A.one()))
        for j in range(i + 1, d + 1):
            out.append((f"X{i}X{j} commute", prod(X(i), X(j)) - prod(X(j), X(i))))
    return out


def involution_relation_check(algebra: HeckeAlgebra) -> Dict[str, List[str]]:
    """Which relations the generator images satisfy, as algebra map and as anti-map."""
    A = algebra

    def images(kind, i):
        if kind == "T":
            return _im_generator(A, "T", i)
        return A.X(i, -1 if kind == "X" else 1)

    report = {}
    for name, rev in (("homomorphism", False), ("anti_homomorphism", True)):
        report[name] = [n for n, r in defining_relations(A, images, rev) if not r.is_zero()]
    return report


# --------------------------------------------------------------------------
# Cyclotomic quotients through the seminormal representation


def standard_tableaux(shape: Multipartition) -> List[Dict[int, Tuple[int, int, int]]]:
    """Standard tableaux as maps ``entry -> (component, row, column)`` (0-based)."""
    cells = [(r, i, j) for r, p in enumerate(shape.components)
             for i, row in enumerate(p) for j in range(row)]
    n = len(cells)
    out = []

    def rec(filled: Dict[Tuple[int, int, int], int], k: int, acc: Dict[int, Tuple[int, int, int]]):
        if k == n:
            out.append(dict(acc))
            return
        for c in cells:
            if c in filled:
                continue
            r, i, j = c
            if (i > 0 and (r, i - 1, j) not in filled) or (j > 0 and (r, i, j - 1) not in filled):
                continue
            filled[c] = k
            acc[k + 1] = c
            rec(filled, k + 1, acc)
            del filled[c]
            del acc[k + 1]

    rec({}, 0, {})
    return out


def _tableau_key(t: Dict[int, Tuple[int, int, int]]) -> Tuple:
    return tuple(t[k] for k in sorted(t))


def check_generic(q: Fraction, Q: Sequence[Fraction], d: int) -> None:
    """Raise ``DegenerateParameters`` unless ``(q, Q)`` is generic for ``d``."""
    if q == 0 or any(x == 0 for x in Q):
        raise DegenerateParameters("parameters must be nonzero")
    for k in range(1, d + 1):
        if q ** k == 1:
            raise DegenerateParameters(f"q^{k} = 1")
    for a, b in itertools.permutations(range(len(Q)), 2):
        for k in range(-(d - 1), d):
            if Q[a] == Q[b] * q ** k:
                raise DegenerateParameters(f"Q_{a + 1} / Q_{b + 1} = q^{k}")


class CyclotomicAlgebra:
    """``H_d`` modulo ``(X_1 - Q_1)...(X_1 - Q_l)`` at generic rational parameters.

    Elements are evaluated in the direct sum of the seminormal
    representations indexed by ``l``-multipartitions of ``d``; for generic
    parameters this representation is faithful on the quotient.
    """

    def __init__(self, d: int, Q: Sequence, q=Fraction(2)):
        self.d = d
        self.l = len(Q)
        self.q = Fraction(q)
        self.Q = tuple(Fraction(x) for x in Q)
        if self.l < 1:
            raise DomainError("need at least one cyclotomic parameter")
        check_generic(self.q, self.Q, d)
        self.algebra = HeckeAlgebra(d, self.q)
        self.modules = []
        for shape in multipartitions(d, self.l):
            tabs = sorted(standard_tableaux(shape), key=_tableau_key)
            self.modules.append((shape, tabs))
        self._basis_cache: Optional[List[Tuple[Key, Dict]]] = None
        self._reducer: Optional[RowReducer] = None

    # seminormal matrices -------------------------------------------------
    def content(self, cell: Tuple[int, int, int]) -> Fraction:
        r, i, j = cell
        return self.Q[r] * self.q ** (j - i)

    def _d_length(self, t) -> int:
        """Length of the permutation taking the row reading tableau to ``t``."""
        order = sorted(t.values())
        reading = {c: n + 1 for n, c in enumerate(order)}
        w = [reading[t[k]] - 1 for k in sorted(t)]
        return perm_length(tuple(w))

    def _matrix_T(self, i: int, tabs) -> Dict[Tuple[int, int], Fraction]:
        """Sparse matrix ``{(row, col): value}`` of ``T_i`` on one module."""
        q = self.q
        index = {_tableau_key(t): n for n, t in enumerate(tabs)}
        out: Dict[Tuple[int, int], Fraction] = {}
        for n, t in enumerate(tabs):
            a = self.content(t[i])
            b = self.content(t[i + 1])
            ri, ii, ji = t[i]
            rj, ij, jj = t[i + 1]
            if ri == rj and ii == ij:
                out[(n, n)] = q
                continue
            if ri == rj and ji == jj:
                out[(n, n)] = Fraction(-1)
                continue
            s = dict(t)
            s[i], s[i + 1] = t[i + 1], t[i]
            m = index[_tableau_key(s)]
            alpha = (q - 1) * b / (b - a)
            out[(n, n)] = alpha
            if self._d_length(s) > self._d_length(t):
                out[(m, n)] = Fraction(1)
            else:
                delta = (q - 1) * a / (a - b)
                out[(m, n)] = alpha * delta + q
        return out

    def _matrix_X(self, k: int, power: int, tabs) -> Dict[Tuple[int, int], Fraction]:
        return {(n, n): self.content(t[k]) ** power for n, t in enumerate(tabs)}

    @staticmethod
    def _matmul(A, B):
        rows: Dict[int, Dict[int, Fraction]] = {}
        for (i, k), v in A.items():
            rows.setdefault(k, {})[i] = v
        out: Dict[Tuple[int, int], Fraction] = {}
        for (k, j), v in B.items():
            for i, u in rows.get(k, {}).items():
                out[(i, j)] = out.get((i, j), 0) + u * v
        return {k: v for k, v in out.items() if v != 0}

    def represent(self, x: HeckeElement) -> Dict:
        """Flattened image of ``x`` in the sum of matrix algebras."""
        if x.algebra.d != self.d:
            raise DomainError("element has the wrong d")
        out: Dict = {}
        for mi, (shape, tabs) in enumerate(self.modules):
            ident = {(n, n): Fraction(1) for n in range(len(tabs))}
            tmats = {i: self._matrix_T(i, tabs) for i in range(1, self.d)}
            for (a, w), c in x.terms.items():
                m = ident
                for k, p in enumerate(a, start=1):
                    if p:
                        m = self._matmul(m, self._matrix_X(k, p, tabs))
                for i in reduced_word(w):
                    m = self._matmul(m, tmats[i])
                for (r, s), v in m.items():
                    key = (mi, r, s)
                    out[key] = out.get(key, 0) + Fraction(c) * v
        return {k: v for k, v in out.items() if v != 0}

    def relation_residuals(self) -> List[str]:
        """Defining relations (including the cyclotomic one) that fail in the representation."""
        failed = [n for n, r in defining_relations(self.algebra) if self.represent(r)]
        if self.represent(self.cyclotomic_relation()):
            failed.append("cyclotomic")
        return failed

    def cyclotomic_relation(self) -> HeckeElement:
        A = self.algebra
        out = A.one()
        for Qi in self.Q:
            out = out * (A.X(1) - A.scalar(Qi))
        return out

    # basis and reduction -------------------------------------------------
    def basis_keys(self) -> List[Key]:
        perms = sorted(itertools.permutations(range(self.d)), key=lambda w: (perm_length(w), w))
        return [(a, w) for a in itertools.product(range(self.l), repeat=self.d) for w in perms]

    def _build(self):
        if self._reducer is None:
            red = RowReducer()
            for key in self.basis_keys():
                red.add(self.represent(self.algebra.monomial(*key)), tag=key)
            self._reducer = red

    def dimension(self) -> int:
        """Rank of the images of the ``X^a T_w`` with ``0 <= a_i < l``."""
        self._build()
        return len(self._reducer)

    def reduce(self, x: HeckeElement) -> Dict[Key, Fraction]:
        """Coordinates of the image of ``x`` in the basis ``X^a T_w``, ``0 <= a_i < l``."""
        self._build()
        if self.dimension() != len(self.basis_keys()):
            raise VerificationError("the candidate basis is not independent")
        sol = self._reducer.solve(self.represent(x))
        if sol is None:
            raise VerificationError("element image is outside the span of the basis")
        return {k: v for k, v in sol.items() if v != 0}

    def expected_dimension(self) -> int:
        f = 1
        for n in range(2, self.d + 1):
            f *= n
        return self.l ** self.d * f

    def module_dimensions(self) -> List[int]:
        return [len(t) for _, t in self.modules]


def cyclotomic_reduce(x: HeckeElement, Q: Sequence, q=None) -> Dict[Key, Fraction]:
    alg = CyclotomicAlgebra(x.algebra.d, Q, x.algebra.q if q is None else q)
    return alg.reduce(x)


def cyclotomic_dimension(l: int, d: int, q=Fraction(2), Q: Optional[Sequence] = None) -> int:
    if Q is None:
        Q = [Fraction(3 + 2 * i) for i in range(l)]
    return CyclotomicAlgebra(d, Q, q).dimension()


def transpose_weight_check(d: int, Q: Sequence, q=Fraction(2)) -> bool:
    """``X_k -> X_k^{-1}`` matches the ``X``-spectra of each module with those of
    the transposed multipartition for the reversed inverted parameters."""
    q = Fraction(q)
    Q = [Fraction(x) for x in Q]
    Qdual = [1 / x for x in reversed(Q)]
    alg = CyclotomicAlgebra(d, Q, q)
    dual = CyclotomicAlgebra(d, Qdual, q)

    def spectra(a, shape):
        tabs = [t for s, ts in a.modules if s == shape for t in ts]
        return sorted(tuple(a.content(t[k]) for k in range(1, d + 1)) for t in tabs)

    for shape, _ in alg.modules:
        inverted = sorted(tuple(1 / c for c in v) for v in spectra(alg, shape))
        if inverted != spectra(dual, shape.transpose()):
            return False
    return True


def symmetric_center_check(alg: CyclotomicAlgebra) -> List[int]:
    """Degrees ``r`` for which the elementary symmetric function fails to be central."""
    A = alg.algebra
    bad = []
    for r in range(1, A.d + 1):
        e_r = A.zero()
        for subset in itertools.combinations(range(1, A.d + 1), r):
            term = A.one()
            for i in subset:
                term = term * A.X(i)
            e_r = e_r + term
        gens = [A.T(i) for i in range(1, A.d)] + [A.X(i) for i in range(1, A.d + 1)]
        if any(not (g * e_r - e_r * g).is_zero() for g in gens):
            bad.append(r)
    return bad
