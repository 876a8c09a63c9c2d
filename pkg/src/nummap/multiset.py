"""Multisets over [k] = {1, ..., k} as dense multiplicity vectors.

Ordering is lexicographic on ``(m_1, ..., m_k)`` (tuple comparison), which
is a total order compatible with componentwise dominance.
"""
from __future__ import annotations

import itertools
from typing import Any, Sequence, TypeVar

from .errors import DomainError, SchemaError, ShapeError
from .ring import binom, parse_int

T = TypeVar("T")


class MultiSet(tuple):
    """Multiplicity vector ``(m_1, ..., m_k)``; ``MultiSet([2, 1])`` is {1, 1, 2}."""

    def __new__(cls, mult: Sequence[int] = ()):
        ms = tuple(int(m) for m in mult)
        if any(m < 0 for m in ms):
            raise DomainError(f"multiplicities must be natural: {ms}")
        return super().__new__(cls, ms)

    @classmethod
    def empty(cls, k: int) -> MultiSet:
        return cls((0,) * k)

    @classmethod
    def from_elements(cls, k: int, elements: Sequence[int]) -> MultiSet:
        """Build from 1-based elements, e.g. ``from_elements(2, [1, 1, 2])``."""
        mult = [0] * k
        for e in elements:
            if not 1 <= e <= k:
                raise DomainError(f"element {e} outside [1, {k}]")
            mult[e - 1] += 1
        return cls(mult)

    @classmethod
    def unit(cls, k: int, i: int, m: int = 1) -> MultiSet:
        """{i, ..., i} (m copies), 0-based index ``i``."""
        mult = [0] * k
        mult[i] = m
        return cls(mult)

    @property
    def k(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        """Cardinality |X|."""
        return sum(self)

    @property
    def support(self) -> frozenset[int]:
        """#X as 0-based indices."""
        return frozenset(i for i, m in enumerate(self) if m > 0)

    def elements(self) -> list[int]:
        """0-based elements with repetition, in index order."""
        return [i for i, m in enumerate(self) for _ in range(m)]

    def __add__(self, other):  # multiset union with multiplicities
        if isinstance(other, MultiSet):
            if len(other) != len(self):
                raise DomainError("multisets over different index sets")
            return MultiSet(a + b for a, b in zip(self, other))
        return NotImplemented

    def dominated_by(self, other: Sequence[int]) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __repr__(self) -> str:
        inner = ",".join(str(i + 1) for i in self.elements())
        return f"MultiSet({{{inner}}}/k={len(self)})"

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def from_json(cls, data: Any, k: int | None = None) -> MultiSet:
        if not isinstance(data, list):
            raise SchemaError("MultiSet must be a JSON array of naturals")
        try:
            X = cls(parse_int(m) for m in data)
        except DomainError as exc:
            raise SchemaError(str(exc)) from None
        if k is not None and len(X) != k:
            raise ShapeError(f"multiset {data} has length {len(X)}, expected k={k}")
        return X


def multi_binom(a: Sequence[int], X: Sequence[int]) -> int:
    """binom(a, X) = prod_i binom(a_i, m_i)."""
    if len(a) != len(X):
        raise DomainError(f"multi_binom: {len(a)} values for a multiset over [{len(X)}]")
    out = 1
    for ai, mi in zip(a, X):
        if mi:
            out *= binom(ai, mi)
            if not out:
                return 0
    return out


def enumerate_multisets(k: int, n: int) -> list[MultiSet]:
    """All multisets over [k] with |X| <= n, lex ordered; binom(k+n, k) of them."""
    if k < 0 or n < 0:
        raise DomainError("enumerate_multisets takes natural arguments")
    return [MultiSet(m) for m in itertools.product(range(n + 1), repeat=k) if sum(m) <= n]


def enumerate_full_support(t: int, n: int) -> list[MultiSet]:
    """Multisets over [t] with support exactly [t] and |X| <= n."""
    return [X for X in enumerate_multisets(t, n) if all(X)]


def repeat_args(X: Sequence[int], xs: Sequence[T]) -> list[T]:
    """x_i repeated m_i times, in index order."""
    if len(X) != len(xs):
        raise DomainError(f"repeat_args: {len(xs)} arguments for a multiset over [{len(X)}]")
    return [x for x, m in zip(xs, X) for _ in range(m)]
