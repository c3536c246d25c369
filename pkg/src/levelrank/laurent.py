"""Laurent polynomials in one variable ``q`` with integer coefficients."""

from __future__ import annotations

from typing import Dict, Iterable, List, Tuple


class Laurent:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Dict[int, int] | None = None):
        self._c = {int(k): v for k, v in (coeffs or {}).items() if v != 0}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({0: c})

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "Laurent":
        out: Dict[int, int] = {}
        for e in exps:
            out[e] = out.get(e, 0) + 1
        return cls(out)

    @classmethod
    def q_integer(cls, n: int, balanced: bool = True, step: int = 2) -> "Laurent":
        """``[n]_q``; balanced means ``sum q^{step*r - step*(n-1)/2}``.

        With ``balanced=False`` it returns ``1 + q + ... + q^{n-1}``
        scaled by ``step`` in the exponent.
        """
        if n <= 0:
            return cls()
        if balanced:
            return cls.from_exponents(step * r - (n - 1) * step // 2 for r in range(n))
        return cls.from_exponents(step * r for r in range(n))

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: Dict[int, int] = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return Laurent(out)

    __rmul__ = __mul__

    def shift(self, n: int) -> "Laurent":
        return Laurent({k + n: v for k, v in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def substitute(self, value):
        return sum(v * value ** k for k, v in self._c.items())

    def exponents(self) -> List[int]:
        out = []
        for k in sorted(self._c):
            out.extend([k] * self._c[k])
        return out

    def min_degree(self) -> int:
        return min(self._c) if self._c else 0

    def max_degree(self) -> int:
        return max(self._c) if self._c else 0

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self._c.items())

    def to_json(self) -> Dict[str, int]:
        return {str(k): v for k, v in sorted(self._c.items())}

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            if k == 0:
                parts.append(f"{v}")
            else:
                c = "" if v == 1 else ("-" if v == -1 else f"{v}*")
                parts.append(f"{c}q^{k}")
        return " + ".join(parts)


def _coerce(x) -> Laurent:
    if isinstance(x, Laurent):
        return x
    if isinstance(x, int):
        return Laurent.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Laurent")


def ordinary(coeffs: List[int]) -> Laurent:
    """Build ``sum coeffs[i] q^i``."""
    return Laurent({i: c for i, c in enumerate(coeffs)})
