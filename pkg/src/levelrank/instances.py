"""Finite families of small cases shared by the verification routines."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from .affine_weyl import (AffinePermutation, ParabolicData, convention_for, coset_reps,
                          elements_up_to_length, parabolic, shifted_composition)


def compositions(N: int, parts: int, positive: bool = False) -> List[Tuple[int, ...]]:
    lo = 1 if positive else 0
    return [c for c in itertools.product(range(lo, N + 1), repeat=parts) if sum(c) == N]


@dataclass(frozen=True)
class Cell:
    """A composition ``mu`` with a bound ``v`` taken as a longest representative."""

    e: int
    mu: Tuple[int, ...]
    v: AffinePermutation
    convention: str = "standard"

    @property
    def N(self) -> int:
        return sum(self.mu)

    @property
    def data(self) -> ParabolicData:
        return parabolic(self.mu, self.e, self.convention)

    def label(self) -> str:
        return f"e={self.e} mu={self.mu} v={self.v.word_string()} ({self.convention})"


@dataclass(frozen=True)
class Step:
    """``mu`` with ``mu_k = 1`` (or the mirror ``mu_{k+1} = 0``), ``mu' = mu - alpha_k``
    and a bound ``v`` that is a longest representative for the bigger stabilizer."""

    e: int
    mu: Tuple[int, ...]
    k: int
    v: AffinePermutation

    @property
    def mu_prime(self) -> Tuple[int, ...]:
        return shifted_composition(self.mu, self.k)

    @property
    def convention(self) -> str:
        return convention_for(self.k)

    @property
    def mirror(self) -> bool:
        return self.mu[(self.k - 1) % self.e] != 1

    @property
    def multiplicity(self) -> int:
        """``mu_{k+1} + 1`` in the main case, ``mu_k`` in the mirror case."""
        if self.mirror:
            return self.mu[(self.k - 1) % self.e]
        return self.mu[self.k % self.e] + 1

    def label(self) -> str:
        tag = " mirror" if self.mirror else ""
        return f"e={self.e} mu={self.mu} k={self.k} v={self.v.word_string()}{tag}"


@lru_cache(maxsize=None)
def _ball(N: int, max_length: int) -> Tuple[AffinePermutation, ...]:
    return tuple(elements_up_to_length(N, max_length, (0,)))


def cell_grid(max_N: int = 3, max_e: int = 3, max_cells: int = 6, max_length: int = 8,
              convention: str = "standard") -> Iterator[Cell]:
    """Every ``(e, mu, v)`` with ``2 <= N <= max_N``, ``2 <= e <= max_e``, ``v`` in
    ``J_{mu,+}`` of length at most ``max_length`` and ``|^vJ_mu| <= max_cells``."""
    for N in range(2, max_N + 1):
        ball = _ball(N, max_length)
        for e in range(2, max_e + 1):
            for mu in compositions(N, e):
                data = parabolic(mu, e, convention)
                for v in ball:
                    if not data.is_max_rep(v):
                        continue
                    if len(coset_reps(data, v, "min")) <= max_cells:
                        yield Cell(e, mu, v, convention)


def step_grid(max_N: int = 3, max_e: int = 3, max_cells: int = 6, max_length: int = 8,
              mirror: bool = False) -> Iterator[Step]:
    """Every ``(e, mu, k, v)`` in the same ranges with ``mu_k = 1`` (or, with
    ``mirror``, ``mu_{k+1} = 0`` and ``mu_k >= 1``) and ``v`` a longest
    representative for the bigger of the two stabilizers."""
    for N in range(2, max_N + 1):
        ball = _ball(N, max_length)
        for e in range(2, max_e + 1):
            for mu in compositions(N, e):
                for k in range(e):
                    mk = mu[(k - 1) % e]
                    mk1 = mu[k % e]
                    if mirror:
                        if not (mk >= 1 and mk1 == 0):
                            continue
                    elif mk != 1:
                        continue
                    conv = convention_for(k)
                    mu_p = shifted_composition(mu, k)
                    big = parabolic(mu if mirror else mu_p, e, conv)
                    small = parabolic(mu_p if mirror else mu, e, conv)
                    for v in ball:
                        if not big.is_max_rep(v):
                            continue
                        if len(coset_reps(small, v, "min")) <= max_cells:
                            yield Step(e, mu, k, v)


def sample(items, limit: Optional[int]) -> list:
    items = list(items)
    if limit is None or len(items) <= limit:
        return items
    stride = len(items) / limit
    return [items[int(i * stride)] for i in range(limit)]
