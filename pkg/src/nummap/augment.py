"""The augmentation algebra of Z^k in degree n, modeled as Z[t_1..t_k]/J_n.

J_n is the ideal of monomials of total degree > n. The class map sends
``[x]`` to ``(1+t)^x = prod_i (1+t_i)^{x_i}``, a finite sum because every
t_i is nilpotent modulo J_n. Membership of the two generator families of
the defining ideal is tested through their images, which must vanish.
"""
from __future__ import annotations

import itertools
from typing import Any, Mapping, Sequence

from .errors import DomainError, SchemaError, ShapeError
from .multiset import MultiSet, enumerate_multisets, repeat_args
from .numap import NumTable, eval_table
from .ring import binom, parse_int


class TruncPoly:
    """sum_X c_X t^X modulo J_n, with integer coefficients."""

    __slots__ = ("k", "n", "_coeffs")

    def __init__(self, k: int, n: int, coeffs: Mapping[Sequence[int], int] | None = None):
        if k < 0 or n < 0:
            raise DomainError("TruncPoly needs natural k and n")
        self.k, self.n = k, n
        acc: dict[MultiSet, int] = {}
        for X, c in (coeffs or {}).items():
            X = MultiSet(X)
            if len(X) != k:
                raise ShapeError(f"monomial {list(X)} is not over [{k}]")
            if X.size <= n:
                acc[X] = acc.get(X, 0) + int(c)
        self._coeffs = {X: acc[X] for X in sorted(acc) if acc[X]}

    @classmethod
    def one(cls, k: int, n: int) -> TruncPoly:
        return cls(k, n, {MultiSet.empty(k): 1})

    @classmethod
    def monomial(cls, X: Sequence[int], n: int, c: int = 1) -> TruncPoly:
        return cls(len(X), n, {tuple(X): c})

    @classmethod
    def t(cls, k: int, i: int, n: int) -> TruncPoly:
        """The variable t_i (0-based)."""
        return cls.monomial(MultiSet.unit(k, i), n)

    def coeff(self, X: Sequence[int]) -> int:
        return self._coeffs.get(MultiSet(X), 0)

    def items(self):
        return iter(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: TruncPoly) -> None:
        if (self.k, self.n) != (other.k, other.n):
            raise ShapeError(f"TruncPoly over (k={self.k}, n={self.n}) vs (k={other.k}, n={other.n})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return (self.k, self.n, self._coeffs) == (other.k, other.n, other._coeffs)

    def __hash__(self) -> int:
        return hash((self.k, self.n, tuple(self._coeffs.items())))

    def __add__(self, other: TruncPoly) -> TruncPoly:
        self._check(other)
        acc = dict(self._coeffs)
        for X, c in other._coeffs.items():
            acc[X] = acc.get(X, 0) + c
        return TruncPoly(self.k, self.n, acc)

    def __neg__(self) -> TruncPoly:
        return TruncPoly(self.k, self.n, {X: -c for X, c in self._coeffs.items()})

    def __sub__(self, other: TruncPoly) -> TruncPoly:
        return self + (-other)

    def __mul__(self, other: TruncPoly | int) -> TruncPoly:
        if isinstance(other, int):
            return TruncPoly(self.k, self.n, {X: other * c for X, c in self._coeffs.items()})
        self._check(other)
        acc: dict[MultiSet, int] = {}
        for (X, a), (Y, b) in itertools.product(self._coeffs.items(), other._coeffs.items()):
            if X.size + Y.size <= self.n:
                XY = X + Y
                acc[XY] = acc.get(XY, 0) + a * b
        return TruncPoly(self.k, self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncPoly:
        if e < 0:
            raise DomainError("negative powers are not defined in general")
        out = TruncPoly.one(self.k, self.n)
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"TruncPoly(0; k={self.k}, n={self.n})"
        terms = []
        for X, c in self._coeffs.items():
            mono = "*".join(f"t{i + 1}" + (f"^{m}" if m > 1 else "") for i, m in enumerate(X) if m)
            terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return f"TruncPoly({' + '.join(terms)}; n={self.n})"

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "n": self.n,
                "coeffs": [{"X": X.to_json(), "c": str(c)} for X, c in self._coeffs.items()]}

    @classmethod
    def from_json(cls, data: Any) -> TruncPoly:
        try:
            k, n, rows = data["k"], data["n"], data["coeffs"]
            items = {MultiSet.from_json(r["X"], k): parse_int(r["c"]) for r in rows}
        except (KeyError, TypeError):
            raise SchemaError("TruncPoly needs k, n and coeffs[{X, c}]") from None
        return cls(k, n, items)


trunc_add = TruncPoly.__add__
trunc_mul = TruncPoly.__mul__


def one_plus_t_pow(k: int, i: int, a: int, n: int) -> TruncPoly:
    """(1 + t_i)^a = sum_{j<=n} binom(a, j) t_i^j for any integer a."""
    return TruncPoly(k, n, {MultiSet.unit(k, i, j): binom(a, j) for j in range(n + 1)})


def chi_class(x: Sequence[int], n: int) -> TruncPoly:
    """Image of [x] in the truncated model: prod_i (1 + t_i)^{x_i}."""
    k = len(x)
    out = TruncPoly.one(k, n)
    for i, xi in enumerate(x):
        if xi:
            out = out * one_plus_t_pow(k, i, xi, n)
    return out


def dev_class(xs: Sequence[Sequence[int]], n: int, k: int | None = None) -> TruncPoly:
    """Image of the deviation [x_1 <> ... <> x_t], by inclusion-exclusion.

    Asserts agreement with the product formula prod_i (chi(x_i) - 1).
    """
    if k is None:
        if not xs:
            raise DomainError("dev_class of no vectors needs an explicit k")
        k = len(xs[0])
    t = len(xs)
    total = TruncPoly(k, n)
    for mask in range(1 << t):
        s = [0] * k
        size = 0
        for i in range(t):
            if mask >> i & 1:
                size += 1
                s = [p + q for p, q in zip(s, xs[i])]
        term = chi_class(s, n)
        total = total - term if (t - size) % 2 else total + term
    assert total == dev_product(xs, n, k), "deviation class disagrees with the product formula"
    return total


def dev_product(xs: Sequence[Sequence[int]], n: int, k: int) -> TruncPoly:
    out = TruncPoly.one(k, n)
    one = TruncPoly.one(k, n)
    for x in xs:
        out = out * (chi_class(x, n) - one)
    return out


def scalar_relation_class(r: int, x: Sequence[int], n: int) -> TruncPoly:
    """chi([r x]) - sum_{m<=n} binom(r, m) chi([<>_m x]); zero in the model."""
    k = len(x)
    out = chi_class([r * c for c in x], n)
    for m in range(n + 1):
        c = binom(r, m)
        if c:
            out = out - c * dev_class([x] * m, n, k)
    return out


def psi_image(X: Sequence[int], n: int) -> TruncPoly:
    """prod_i (chi(e_i) - 1)^{m_i}, i.e. the class of [<>_{i in X} e_i]."""
    k = len(X)
    es = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    return dev_class(repeat_args(X, es), n, k)


class UniversalFactor:
    """The linear functional t^X -> v_X through which a degree-n table factors."""

    def __init__(self, T: NumTable):
        self.table = T
        self.k, self.m, self.n = T.k, T.m, T.n

    def assignment(self) -> list[tuple[MultiSet, tuple[int, ...]]]:
        """Image of every basis monomial, zeros included, in lex order."""
        return [(X, self.table[X]) for X in enumerate_multisets(self.k, self.n)]

    def __call__(self, p: TruncPoly) -> tuple[int, ...]:
        if (p.k, p.n) != (self.k, self.n):
            raise ShapeError(f"factor is over (k={self.k}, n={self.n}), got (k={p.k}, n={p.n})")
        out = [0] * self.m
        for X, c in p.items():
            for i, v in enumerate(self.table[X]):
                out[i] += c * v
        return tuple(out)

    def commutes_at(self, x: Sequence[int]) -> bool:
        return self(chi_class(x, self.n)) == tuple(eval_table(self.table, x))

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "m": self.m, "n": self.n,
                "assignment": [{"X": X.to_json(), "v": [str(c) for c in v]}
                               for X, v in self.assignment()]}


def universal_factor(T: NumTable) -> UniversalFactor:
    return UniversalFactor(T)
