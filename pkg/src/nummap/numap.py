"""Numerical maps Z^k -> Z^m.

A map is handled either as a black-box :class:`MapOracle` or as a
coefficient table. A :class:`NumTable` stores the elements ``v_X`` with

    phi(a_1 e_1 + ... + a_k e_k) = sum_X binom(a, X) v_X,

and a :class:`StrictTable` stores the same shape against monomials ``a^X``.
Extraction, evaluation, deviation calculus, degree verification and the
two characterization identities all live here.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, SchemaError, ShapeError
from .multiset import (
    MultiSet,
    enumerate_full_support,
    enumerate_multisets,
    multi_binom,
    repeat_args,
)
from .ring import NumAlgebra, Z, binom, parse_int, stirling2

Vector = tuple[int, ...]
Scalar = int | Fraction


def _vadd(x: Sequence[Scalar], y: Sequence[Scalar]) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def _vscale(c: Scalar, x: Sequence[Scalar]) -> tuple:
    return tuple(c * a for a in x)


def _normalize(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class MapOracle:
    """A total, deterministic map ``f`` from Z^k-vectors to Z^m-vectors."""

    k: int
    m: int
    f: Callable[[Vector], Sequence[int]]
    name: str = "phi"

    def __call__(self, x: Sequence[int]) -> Vector:
        if len(x) != self.k:
            raise ShapeError(f"{self.name} expects vectors of length {self.k}, got {len(x)}")
        y = tuple(self.f(tuple(x)))
        if len(y) != self.m:
            raise ShapeError(f"{self.name} returned {len(y)} components, expected {self.m}")
        return y

    @classmethod
    def scalar(cls, f: Callable[[int], int], name: str = "phi") -> MapOracle:
        """Wrap a function Z -> Z."""
        return cls(1, 1, lambda x: (f(x[0]),), name)

    @property
    def zero(self) -> Vector:
        return (0,) * self.k


# ---------------------------------------------------------------------------
# Tables


class _Table:
    """Sparse multiset-indexed table of Z^m-vectors; zero vectors are dropped."""

    basis = "?"
    __slots__ = ("k", "m", "n", "_coeffs")

    def __init__(self, k: int, m: int, n: int,
                 coeffs: Mapping[Sequence[int], Sequence[Scalar]] | Iterable[tuple] = ()):
        if min(k, m, n) < 0:
            raise DomainError("k, m, n must be natural")
        self.k, self.m, self.n = k, m, n
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[MultiSet, tuple] = {}
        for X, v in items:
            X = MultiSet(X)
            if len(X) != k:
                raise ShapeError(f"key {list(X)} is not a multiset over [{k}]")
            if X.size > n:
                raise ShapeError(f"key {list(X)} has |X| = {X.size} > n = {n}")
            v = tuple(_normalize(c) for c in v)
            if len(v) != m:
                raise ShapeError(f"value for {list(X)} has {len(v)} components, expected {m}")
            acc[X] = _vadd(acc[X], v) if X in acc else v
        self._coeffs = {X: acc[X] for X in sorted(acc) if any(acc[X])}

    def __getitem__(self, X: Sequence[int]) -> tuple:
        return self._coeffs.get(MultiSet(X), (0,) * self.m)

    def items(self) -> Iterator[tuple[MultiSet, tuple]]:
        return iter(self._coeffs.items())

    def keys(self) -> list[MultiSet]:
        return list(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (self.k, self.m, self.n, self._coeffs) == (other.k, other.m, other.n, other._coeffs)

    def __hash__(self) -> int:
        return hash((self.basis, self.k, self.m, self.n, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{list(X)}: {list(v)}" for X, v in self._coeffs.items())
        return f"{type(self).__name__}(k={self.k}, m={self.m}, n={self.n}, {{{body}}})"

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for v in self._coeffs.values() for c in v)

    def with_degree_bound(self, n: int):
        return type(self)(self.k, self.m, n, self._coeffs)

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "basis": self.basis,
            "coeffs": [{"X": X.to_json(), "v": [str(c) for c in v]}
                       for X, v in self._coeffs.items()],
        }


class NumTable(_Table):
    """Binomial-basis coefficients v_X of a numerical map of degree <= n."""

    basis = "binomial"
    __slots__ = ()

    def __init__(self, k, m, n, coeffs=()):
        super().__init__(k, m, n, coeffs)
        if not self.is_integral:
            raise DomainError("NumTable entries must be integers")


class StrictTable(_Table):
    """Monomial-basis coefficients; entries may be rational."""

    basis = "monomial"
    __slots__ = ()


def table_from_json(data: Any) -> NumTable | StrictTable:
    if not isinstance(data, dict):
        raise SchemaError("table must be a JSON object")
    try:
        k, m, n = (data[key] for key in ("k", "m", "n"))
        basis = data.get("basis", "binomial")
        rows = data["coeffs"]
    except KeyError as exc:
        raise SchemaError(f"table is missing field {exc}") from None
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (k, m, n)):
        raise SchemaError("k, m, n must be JSON integers")
    if basis not in ("binomial", "monomial") or not isinstance(rows, list):
        raise SchemaError("basis must be 'binomial' or 'monomial' and coeffs an array")
    parse = parse_int if basis == "binomial" else parse_rational
    items = []
    for row in rows:
        if not isinstance(row, dict) or "X" not in row or "v" not in row:
            raise SchemaError("each coeff entry needs 'X' and 'v'")
        if not isinstance(row["v"], list):
            raise SchemaError("'v' must be an array of decimal strings")
        items.append((MultiSet.from_json(row["X"], k), [parse(c) for c in row["v"]]))
    cls = NumTable if basis == "binomial" else StrictTable
    return cls(k, m, n, items)


def parse_rational(value: Any) -> Scalar:
    if isinstance(value, str) and "/" in value:
        try:
            return _normalize(Fraction(value))
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"bad rational {value!r}") from None
    return parse_int(value)


# ---------------------------------------------------------------------------
# Evaluation


def eval_table(T: _Table, a: Sequence[Any], algebra: NumAlgebra = Z) -> list[Any]:
    """Evaluate a table at ``a = (a_1, ..., a_k)`` inside a numerical algebra.

    Binomial tables use ``binom(a, X)`` computed in the algebra; monomial
    tables use ``a^X``. Rational monomial coefficients are only allowed over Z.
    """
    if len(a) != T.k:
        raise ShapeError(f"table has k={T.k} but {len(a)} arguments were given")
    if algebra is Z:
        return _eval_over_z(T, a)
    A = algebra
    if not T.is_integral:
        raise DomainError("rational coefficients can only be evaluated over Z")
    out = [A.zero() for _ in range(T.m)]
    cache: dict[tuple[int, int], Any] = {}
    for X, v in T.items():
        term = A.one()
        for j, mj in enumerate(X):
            if mj:
                if (j, mj) not in cache:
                    cache[j, mj] = A.binom(a[j], mj) if T.basis == "binomial" else _power(A, a[j], mj)
                term = A.mul(term, cache[j, mj])
        for i, c in enumerate(v):
            if c:
                out[i] = A.add(out[i], A.scale(c, term))
    return out


def _power(A: NumAlgebra, x: Any, e: int) -> Any:
    out = A.one()
    for _ in range(e):
        out = A.mul(out, x)
    return out


def _eval_over_z(T: _Table, a: Sequence[int]) -> list[Scalar]:
    out: list[Scalar] = [0] * T.m
    for X, v in T.items():
        if T.basis == "binomial":
            w = multi_binom(a, X)
        else:
            w = math.prod(ai ** mi for ai, mi in zip(a, X))
        if w:
            for i, c in enumerate(v):
                out[i] += c * w
    return [_normalize(c) for c in out]


def table_as_oracle(T: _Table) -> MapOracle:
    """The map a -> eval_table(T, a) over Z."""
    if not T.is_integral:
        raise DomainError("a rational table does not define a map Z^k -> Z^m")
    return MapOracle(T.k, T.m, lambda a: _eval_over_z(T, a), name=f"{T.basis}-table")


def degree_of(T: _Table) -> int:
    return max((X.size for X in T.keys()), default=0)


# ---------------------------------------------------------------------------
# Deviations


def deviate(phi: MapOracle, xs: Sequence[Sequence[int]]) -> Vector:
    """phi(x_1 <> ... <> x_t) = sum_{I in [t]} (-1)^{t-|I|} phi(sum_{i in I} x_i).

    For t = 0 this is phi(0).
    """
    t = len(xs)
    for x in xs:
        if len(x) != phi.k:
            raise ShapeError(f"deviation argument {list(x)} is not in Z^{phi.k}")
    total = [0] * phi.m
    for mask in range(1 << t):
        s = [0] * phi.k
        size = 0
        for i in range(t):
            if mask >> i & 1:
                size += 1
                s = [p + q for p, q in zip(s, xs[i])]
        y = phi(s)
        if (t - size) % 2:
            total = [p - q for p, q in zip(total, y)]
        else:
            total = [p + q for p, q in zip(total, y)]
    return tuple(total)


def basis_vectors(k: int) -> list[Vector]:
    return [tuple(int(i == j) for j in range(k)) for i in range(k)]


def extract(phi: MapOracle, n: int) -> NumTable:
    """Read off v_X = phi(<>_{i in X} e_i) for every |X| <= n.

    When phi is numerical of degree <= n the result reproduces phi exactly.
    """
    es = basis_vectors(phi.k)
    return NumTable(phi.k, phi.m, n,
                    ((X, deviate(phi, repeat_args(X, es))) for X in enumerate_multisets(phi.k, n)))


def scalar_axiom_sides(phi: MapOracle, n: int, r: int, x: Sequence[int]) -> tuple[Vector, Vector]:
    """(phi(r x), sum_{j<=n} binom(r, j) phi(<>_j x))."""
    lhs = phi(_vscale(r, x))
    rhs = (0,) * phi.m
    for j in range(n + 1):
        c = binom(r, j)
        if c:
            rhs = _vadd(rhs, _vscale(c, deviate(phi, [x] * j)))
    return lhs, rhs


@dataclass
class DegreeSample:
    """Test data for :func:`verify_degree`: deviation tuples and (r, x) pairs."""

    tuples: list[tuple[Vector, ...]]
    scalars: list[tuple[int, Vector]]


def default_sample(k: int, n: int, lo: int = -3, hi: int = 3,
                   r_lo: int = -6, r_hi: int = 6,
                   max_tuples: int = 5000, seed: int = 0) -> DegreeSample:
    """Exhaustive sample over [lo, hi]^k arguments and r in [r_lo, r_hi].

    Deviations are symmetric, so unordered (n+1)-tuples suffice. If there are
    more than ``max_tuples`` of them a seeded random subset is used instead.
    """
    points = [tuple(p) for p in itertools.product(range(lo, hi + 1), repeat=k)]
    count = math.comb(len(points) + n, n + 1)
    if count <= max_tuples:
        tuples = list(itertools.combinations_with_replacement(points, n + 1))
    else:
        rng = random.Random(seed)
        tuples = [tuple(rng.choice(points) for _ in range(n + 1)) for _ in range(max_tuples)]
    scalars = [(r, x) for r in range(r_lo, r_hi + 1) for x in points]
    return DegreeSample(tuples, scalars)


@dataclass
class DegreeReport:
    n: int
    deviation_violations: list[tuple[tuple[Vector, ...], Vector]] = field(default_factory=list)
    scalar_violations: list[tuple[int, Vector, Vector, Vector]] = field(default_factory=list)
    checked_tuples: int = 0
    checked_scalars: int = 0

    @property
    def ok(self) -> bool:
        return not self.deviation_violations and not self.scalar_violations

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "ok": self.ok,
            "checked_tuples": self.checked_tuples,
            "checked_scalars": self.checked_scalars,
            "deviation_violations": [
                {"args": [[str(c) for c in x] for x in xs], "value": [str(c) for c in v]}
                for xs, v in self.deviation_violations],
            "scalar_violations": [
                {"r": str(r), "x": [str(c) for c in x],
                 "lhs": [str(c) for c in lhs], "rhs": [str(c) for c in rhs]}
                for r, x, lhs, rhs in self.scalar_violations],
        }


def verify_degree(phi: MapOracle, n: int, sample: DegreeSample | None = None) -> DegreeReport:
    """Check both defining equations of a degree-n numerical map on a sample.

    Every violated instance is listed. An empty report only certifies
    consistency on the sample, except for table-backed oracles.
    """
    if sample is None:
        sample = default_sample(phi.k, n)
    report = DegreeReport(n)
    zero = (0,) * phi.m
    for xs in sample.tuples:
        if len(xs) != n + 1:
            raise ShapeError(f"deviation tuple of length {len(xs)}, expected {n + 1}")
        v = deviate(phi, xs)
        report.checked_tuples += 1
        if v != zero:
            report.deviation_violations.append((tuple(map(tuple, xs)), v))
    for r, x in sample.scalars:
        lhs, rhs = scalar_axiom_sides(phi, n, r, x)
        report.checked_scalars += 1
        if lhs != rhs:
            report.scalar_violations.append((r, tuple(x), lhs, rhs))
    return report


# ---------------------------------------------------------------------------
# Characterization identities


def check_eq1(phi: MapOracle, n: int, r: int, x: Sequence[int]) -> tuple[Vector, Vector]:
    """(phi(r x), sum_m (-1)^{n-m} binom(r,m) binom(r-m-1,n-m) phi(m x))."""
    lhs = phi(_vscale(r, x))
    rhs = (0,) * phi.m
    for m in range(n + 1):
        c = (-1) ** (n - m) * binom(r, m) * binom(r - m - 1, n - m)
        if c:
            rhs = _vadd(rhs, _vscale(c, phi(_vscale(m, x))))
    return lhs, rhs


def check_eq2(phi: MapOracle, n: int, a: Sequence[int],
              xs: Sequence[Sequence[int]]) -> tuple[Vector, Vector]:
    """Deviation at (a_1 x_1, ..., a_t x_t) against its binomial expansion.

    The right side sums over multisets X with support exactly [t] and
    |X| <= n, so it is empty once t > n.
    """
    if len(a) != len(xs):
        raise ShapeError(f"{len(a)} scalars for {len(xs)} vectors")
    lhs = deviate(phi, [_vscale(ai, x) for ai, x in zip(a, xs)])
    rhs = (0,) * phi.m
    for X in enumerate_full_support(len(xs), n):
        c = multi_binom(a, X)
        if c:
            rhs = _vadd(rhs, _vscale(c, deviate(phi, repeat_args(X, xs))))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Basis conversion


def _monomial_to_binomial_1d(e: int) -> list[tuple[int, int]]:
    # a^e = sum_j S(e, j) j! binom(a, j)
    return [(j, stirling2(e, j) * math.factorial(j)) for j in range(e + 1) if stirling2(e, j)]


def _binomial_to_monomial_1d(j: int) -> list[tuple[int, Fraction]]:
    # binom(a, j) = falling(a, j) / j!, expanded in powers of a
    poly = [1]
    for i in range(j):
        nxt = [0] * (len(poly) + 1)
        for p, c in enumerate(poly):
            nxt[p + 1] += c
            nxt[p] -= i * c
        poly = nxt
    f = math.factorial(j)
    return [(p, Fraction(c, f)) for p, c in enumerate(poly) if c]


def _change_basis(T: _Table, expand: Callable[[int], list[tuple[int, Scalar]]], cls):
    acc: dict[MultiSet, tuple] = {}
    for X, v in T.items():
        for combo in itertools.product(*(expand(mi) for mi in X)):
            Y = MultiSet(j for j, _ in combo)
            w = math.prod(c for _, c in combo)
            acc[Y] = _vadd(acc.get(Y, (0,) * T.m), _vscale(w, v))
    return cls(T.k, T.m, T.n, acc)


def strict_to_numerical(S: StrictTable) -> NumTable:
    """Rewrite monomials a^X in the binomial basis via Stirling numbers."""
    if not S.is_integral:
        raise DomainError("only integral strict tables define numerical maps over Z")
    return _change_basis(S, _monomial_to_binomial_1d, NumTable)


def numerical_to_strict_rational(T: NumTable) -> tuple[StrictTable, bool]:
    """The unique monomial table over Q agreeing with T on Z^k, and whether it is integral."""
    S = _change_basis(T, _binomial_to_monomial_1d, StrictTable)
    return S, S.is_integral



def random_table(rng: random.Random, k: int | None = None, m: int | None = None,
                 n: int | None = None, lo: int = -9, hi: int = 9,
                 density: float = 0.5, basis: str = "binomial") -> NumTable | StrictTable:
    """A random integral table; unspecified ranks are drawn from k<=3, m<=2, n<=4."""
    k = rng.randint(1, 3) if k is None else k
    m = rng.randint(1, 2) if m is None else m
    n = rng.randint(0, 4) if n is None else n
    items = []
    for X in enumerate_multisets(k, n):
        if rng.random() < density:
            items.append((X, [rng.randint(lo, hi) for _ in range(m)]))
    cls = NumTable if basis == "binomial" else StrictTable
    return cls(k, m, n, items)
