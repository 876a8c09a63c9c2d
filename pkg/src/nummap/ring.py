"""Exact scalar arithmetic over Z and the numerical ring Int(Z).

Integers are plain Python ints and rationals are :class:`fractions.Fraction`.
Integer-valued polynomials are stored in the binomial basis,
``p(x) = sum_j c_j * binom(x, j)``, which keeps every coefficient integral.

The :class:`NumAlgebra` interface (zero, one, add, mul, scalar action,
binomial coefficients) lets table evaluation run inside any numerical
algebra; ``Z``, ``Z^r`` and ``Int(Z)`` are the shipped instances.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .errors import DomainError, SchemaError

__all__ = [
    "binom",
    "falling_factorial",
    "lemma_binomial",
    "stirling2",
    "NumPoly",
    "numpoly_eval",
    "interpolate",
    "numpoly_mul",
    "numpoly_binom",
    "NumAlgebra",
    "IntegerRing",
    "ProductRing",
    "IntegerValuedPolys",
    "Z",
    "INT_Z",
    "algebra_by_name",
    "algebra_axiom_failures",
]


def falling_factorial(r: int, k: int) -> int:
    """r (r-1) ... (r-k+1); the empty product is 1."""
    out = 1
    for i in range(k):
        out *= r - i
    return out


def binom(r: int, k: int) -> int:
    """Binomial coefficient ``binom(r, k)`` for any integer ``r`` and natural ``k``."""
    if k < 0:
        raise DomainError(f"binom: k must be natural, got {k}")
    q, rem = divmod(falling_factorial(r, k), math.factorial(k))
    assert rem == 0, f"falling factorial of {r} not divisible by {k}!"
    return q


def lemma_binomial(r: int, m: int, n: int) -> tuple[int, int]:
    """Both sides of the alternating binomial identity

        sum_{k=m}^{n} (-1)^k binom(r,k) binom(k,m)
            = (-1)^n binom(r,m) binom(r-m-1, n-m).

    Returns ``(lhs, rhs)``; callers compare them.
    """
    if m < 0 or m > n:
        raise DomainError(f"lemma_binomial needs 0 <= m <= n, got m={m}, n={n}")
    lhs = sum((-1) ** k * binom(r, k) * binom(k, m) for k in range(m, n + 1))
    rhs = (-1) ** n * binom(r, m) * binom(r - m - 1, n - m)
    return lhs, rhs


@lru_cache(maxsize=None)
def stirling2(m: int, j: int) -> int:
    """Stirling number of the second kind S(m, j)."""
    if m < 0 or j < 0:
        raise DomainError("stirling2 takes natural arguments")
    if m == 0 or j == 0:
        return 1 if m == j else 0
    return j * stirling2(m - 1, j) + stirling2(m - 1, j - 1)


class NumPoly:
    """An integer-valued polynomial in binomial basis.

    ``NumPoly([c0, c1, c2])`` is ``c0 + c1*binom(x,1) + c2*binom(x,2)``.
    Trailing zeros are stripped so equality is structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: int) -> NumPoly:
        return cls([c])

    @classmethod
    def x(cls) -> NumPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, a: int) -> int:
        return numpoly_eval(self, a)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NumPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == NumPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("NumPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"NumPoly({list(self.coeffs)})"

    def __add__(self, other: NumPoly | int) -> NumPoly:
        other = _as_numpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return NumPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> NumPoly:
        return NumPoly(-c for c in self.coeffs)

    def __sub__(self, other: NumPoly | int) -> NumPoly:
        return self + (-_as_numpoly(other))

    def __rsub__(self, other: int) -> NumPoly:
        return _as_numpoly(other) - self

    def __mul__(self, other: NumPoly | int) -> NumPoly:
        if isinstance(other, int):
            return NumPoly(other * c for c in self.coeffs)
        return numpoly_mul(self, other)

    __rmul__ = __mul__

    def binom(self, k: int) -> NumPoly:
        return numpoly_binom(self, k)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Any) -> NumPoly:
        if not isinstance(data, list):
            raise SchemaError("NumPoly must be a JSON array of decimal strings")
        return cls(parse_int(c) for c in data)


def _as_numpoly(p: NumPoly | int) -> NumPoly:
    if isinstance(p, NumPoly):
        return p
    if isinstance(p, int):
        return NumPoly([p])
    raise TypeError(f"cannot coerce {type(p).__name__} to NumPoly")


def parse_int(value: Any) -> int:
    """Parse a decimal string (or JSON int) into an int."""
    if isinstance(value, bool):
        raise SchemaError("booleans are not integers")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            pass
    raise SchemaError(f"expected a decimal integer string, got {value!r}")


def numpoly_eval(p: NumPoly, a: int) -> int:
    return sum(c * binom(a, j) for j, c in enumerate(p.coeffs))


def interpolate(values: Sequence[int]) -> NumPoly:
    """Newton forward differences: c_k = (k-th difference of values) at 0."""
    row = [int(v) for v in values]
    coeffs = []
    while row:
        coeffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return NumPoly(coeffs)


def numpoly_mul(p: NumPoly, q: NumPoly) -> NumPoly:
    if not p.coeffs or not q.coeffs:
        return NumPoly()
    d = p.degree + q.degree
    return interpolate([p(a) * q(a) for a in range(d + 1)])


def numpoly_binom(p: NumPoly, k: int) -> NumPoly:
    """The integer-valued polynomial ``a -> binom(p(a), k)``."""
    if k < 0:
        raise DomainError(f"numpoly_binom: k must be natural, got {k}")
    d = k * max(p.degree, 0)
    return interpolate([binom(p(a), k) for a in range(d + 1)])


# ---------------------------------------------------------------------------
# Numerical algebras


class NumAlgebra:
    """A commutative ring with binomial coefficients and a finite sample set.

    Subclasses supply the carrier operations. ``samples`` feeds the
    axiom checks and randomized naturality tests.
    """

    name: str = "?"

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def scale(self, c: int, a: Any) -> Any:
        raise NotImplementedError

    def binom(self, a: Any, k: int) -> Any:
        raise NotImplementedError

    def eq(self, a: Any, b: Any) -> bool:
        return a == b

    def embed(self, c: int) -> Any:
        return self.scale(c, self.one())

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def samples(self) -> list[Any]:
        raise NotImplementedError

    def random_element(self, rng, lo: int = -5, hi: int = 5) -> Any:
        raise NotImplementedError

    def element_to_json(self, a: Any) -> Any:
        raise NotImplementedError

    def element_from_json(self, data: Any) -> Any:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<NumAlgebra {self.name}>"


class IntegerRing(NumAlgebra):
    name = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, c, a):
        return c * a

    def binom(self, a, k):
        return binom(a, k)

    def samples(self):
        return list(range(-10, 11))

    def random_element(self, rng, lo=-5, hi=5):
        return rng.randint(lo, hi)

    def element_to_json(self, a):
        return str(a)

    def element_from_json(self, data):
        return parse_int(data)


class ProductRing(NumAlgebra):
    """Z^r with componentwise operations."""

    def __init__(self, r: int):
        if r < 1:
            raise DomainError("Z^r needs r >= 1")
        self.r = r
        self.name = f"Z^{r}"

    def __eq__(self, other):
        return isinstance(other, ProductRing) and other.r == self.r

    def __hash__(self):
        return hash(("Z^", self.r))

    def zero(self):
        return (0,) * self.r

    def one(self):
        return (1,) * self.r

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return tuple(x * y for x, y in zip(a, b))

    def scale(self, c, a):
        return tuple(c * x for x in a)

    def binom(self, a, k):
        return tuple(binom(x, k) for x in a)

    def samples(self):
        vals = range(-2, 3)
        return [tuple(v) for v in itertools.product(vals, repeat=self.r)][:25]

    def random_element(self, rng, lo=-5, hi=5):
        return tuple(rng.randint(lo, hi) for _ in range(self.r))

    def element_to_json(self, a):
        return [str(x) for x in a]

    def element_from_json(self, data):
        if not isinstance(data, list) or len(data) != self.r:
            raise SchemaError(f"{self.name} element must be an array of {self.r} integers")
        return tuple(parse_int(x) for x in data)


class IntegerValuedPolys(NumAlgebra):
    """Int(Z), elements are :class:`NumPoly`."""

    name = "IntZ"

    def zero(self):
        return NumPoly()

    def one(self):
        return NumPoly([1])

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return numpoly_mul(a, b)

    def scale(self, c, a):
        return a * c

    def binom(self, a, k):
        return numpoly_binom(a, k)

    def samples(self):
        base = [[], [1], [-1], [0, 1], [0, -1], [3], [0, 0, 1], [1, 1], [0, 2],
                [0, 1, 2], [2, -1, 1], [0, 0, 0, 1], [-3, 0, 1], [1, -2],
                [0, 1, -1], [4, 0, 0, 1], [0, 3, -2], [-1, 1, 1], [2, 0, -1, 1],
                [0, -2, 1], [5, 1]]
        return [NumPoly(c) for c in base]

    def random_element(self, rng, lo=-5, hi=5):
        deg = rng.randint(0, 3)
        return NumPoly(rng.randint(lo, hi) for _ in range(deg + 1))

    def element_to_json(self, a):
        return a.to_json()

    def element_from_json(self, data):
        return NumPoly.from_json(data)


Z = IntegerRing()
INT_Z = IntegerValuedPolys()


def algebra_by_name(name: str) -> NumAlgebra:
    """Resolve ``Z``, ``Z^r`` or ``IntZ``."""
    if name == "Z":
        return Z
    if name == "IntZ":
        return INT_Z
    if name.startswith("Z^"):
        try:
            r = int(name[2:])
        except ValueError:
            raise DomainError(f"unknown algebra {name!r}") from None
        return ProductRing(r)
    raise DomainError(f"unknown algebra {name!r}")


def algebra_axiom_failures(A: NumAlgebra, max_k: int = 4) -> list[str]:
    """Check ring axioms and binomial consistency on the sample set.

    Returns a list of human-readable failures; empty means all checks hold.
    """
    s = A.samples()
    eq = A.eq
    bad: list[str] = []
    zero, one = A.zero(), A.one()
    for a in s:
        if not eq(A.add(a, zero), a):
            bad.append(f"{a!r} + 0 != {a!r}")
        if not eq(A.mul(a, one), a):
            bad.append(f"{a!r} * 1 != {a!r}")
        if not eq(A.add(a, A.neg(a)), zero):
            bad.append(f"{a!r} - {a!r} != 0")
        if not eq(A.binom(a, 0), one):
            bad.append(f"binom({a!r}, 0) != 1")
        if not eq(A.binom(a, 1), a):
            bad.append(f"binom({a!r}, 1) != {a!r}")
        for k in range(2, max_k + 1):
            falling = one
            for i in range(k):
                falling = A.mul(falling, A.sub(a, A.embed(i)))
            if not eq(A.scale(math.factorial(k), A.binom(a, k)), falling):
                bad.append(f"{k}! binom({a!r}, {k}) != falling factorial")
    for a, b in itertools.product(s, repeat=2):
        if not eq(A.add(a, b), A.add(b, a)):
            bad.append(f"add not commutative at {a!r}, {b!r}")
        if not eq(A.mul(a, b), A.mul(b, a)):
            bad.append(f"mul not commutative at {a!r}, {b!r}")
    few = s[:6]
    for a, b, c in itertools.product(few, repeat=3):
        if not eq(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c))):
            bad.append(f"mul not associative at {a!r}, {b!r}, {c!r}")
        if not eq(A.mul(a, A.add(b, c)), A.add(A.mul(a, b), A.mul(a, c))):
            bad.append(f"not distributive at {a!r}, {b!r}, {c!r}")
        if not eq(A.add(A.add(a, b), c), A.add(a, A.add(b, c))):
            bad.append(f"add not associative at {a!r}, {b!r}, {c!r}")
    return bad
