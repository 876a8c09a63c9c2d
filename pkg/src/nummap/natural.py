"""Extending tables to natural transformations over numerical algebras.

For a table T and a numerical algebra A the extension acts on
``Z^k (x) A = A^k`` by ``(a_1..a_k) -> sum_X v_X (x) binom(a, X)``, and
naturality means it commutes with every algebra homomorphism. Homs are
validated on samples when constructed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .errors import DomainError, ShapeError
from .numap import MapOracle, NumTable, eval_table, extract, numerical_to_strict_rational
from .ring import (
    INT_Z,
    NumAlgebra,
    NumPoly,
    ProductRing,
    Z,
    algebra_by_name,
    binom,
)


@dataclass(frozen=True)
class TensorElem:
    """sum_j e_j (x) a_j in Z^k (x) A, stored as its k components."""

    algebra: NumAlgebra
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def rank(self) -> int:
        return len(self.components)

    def equals(self, other: TensorElem) -> bool:
        return (self.rank == other.rank
                and all(self.algebra.eq(a, b) for a, b in zip(self.components, other.components)))

    def to_json(self) -> list:
        return [self.algebra.element_to_json(a) for a in self.components]


class HomomorphismError(DomainError):
    """A map between algebras fails to preserve the structure on samples."""


class AlgebraHom:
    """A structure-preserving map ``source -> target``.

    Checked on construction against 0, 1, +, *, the scalar action and
    binom(-, k) for k <= ``max_k`` over all source samples.
    """

    def __init__(self, source: NumAlgebra, target: NumAlgebra, fn: Callable[[Any], Any],
                 name: str = "h", check: bool = True, max_k: int = 3):
        self.source, self.target, self.fn, self.name = source, target, fn, name
        if check:
            bad = self.failures(max_k)
            if bad:
                raise HomomorphismError(f"{name} is not a homomorphism: {bad[0]}")

    def __call__(self, a: Any) -> Any:
        return self.fn(a)

    def failures(self, max_k: int = 3) -> list[str]:
        S, T, h = self.source, self.target, self.fn
        out = []
        if not T.eq(h(S.zero()), T.zero()):
            out.append("h(0) != 0")
        if not T.eq(h(S.one()), T.one()):
            out.append("h(1) != 1")
        samples = S.samples()
        for a in samples:
            ha = h(a)
            for c in (-3, 2):
                if not T.eq(h(S.scale(c, a)), T.scale(c, ha)):
                    out.append(f"h({c}*{a!r}) != {c}*h({a!r})")
            for k in range(max_k + 1):
                if not T.eq(h(S.binom(a, k)), T.binom(ha, k)):
                    out.append(f"h(binom({a!r}, {k})) != binom(h({a!r}), {k})")
            for b in samples[:8]:
                hb = h(b)
                if not T.eq(h(S.add(a, b)), T.add(ha, hb)):
                    out.append(f"h({a!r} + {b!r}) != h(a) + h(b)")
                if not T.eq(h(S.mul(a, b)), T.mul(ha, hb)):
                    out.append(f"h({a!r} * {b!r}) != h(a) * h(b)")
        return out

    def then(self, other: AlgebraHom) -> AlgebraHom:
        """``other`` after ``self``."""
        if other.source != self.target:
            raise ShapeError(f"cannot compose {self.name}: ->{self.target.name} "
                             f"with {other.name}: {other.source.name}->")
        return AlgebraHom(self.source, other.target, lambda a: other.fn(self.fn(a)),
                          name=f"{other.name}.{self.name}")

    def __repr__(self) -> str:
        return f"<AlgebraHom {self.name}: {self.source.name} -> {self.target.name}>"


def identity_hom(A: NumAlgebra) -> AlgebraHom:
    return AlgebraHom(A, A, lambda a: a, name="id")


def evaluation_hom(a: int) -> AlgebraHom:
    """Int(Z) -> Z, p -> p(a)."""
    return AlgebraHom(INT_Z, Z, lambda p: p(a), name=f"ev:{a}")


def diagonal_hom(r: int = 2) -> AlgebraHom:
    """Z -> Z^r, a -> (a, ..., a)."""
    return AlgebraHom(Z, ProductRing(r), lambda a: (a,) * r, name="diag")


def projection_hom(i: int, r: int = 2) -> AlgebraHom:
    """Z^r -> Z, the i-th coordinate (0-based)."""
    if not 0 <= i < r:
        raise DomainError(f"projection index {i} outside Z^{r}")
    return AlgebraHom(ProductRing(r), Z, lambda a: a[i], name=f"proj:{i}")


def constant_hom(A: NumAlgebra = INT_Z) -> AlgebraHom:
    """The structure map Z -> A."""
    return AlgebraHom(Z, A, A.embed, name=f"const:{A.name}")


def hom_by_name(name: str, source: NumAlgebra | None = None) -> AlgebraHom:
    """Resolve ``id``, ``ev:<a>``, ``diag``, ``proj:<i>``; composites as ``g.f``."""
    if "." in name:
        parts = name.split(".")
        h = hom_by_name(parts[-1], source)
        for part in reversed(parts[:-1]):
            h = h.then(hom_by_name(part, h.target))
        return h
    if name == "id":
        return identity_hom(source or Z)
    if name == "diag":
        return diagonal_hom()
    head, _, arg = name.partition(":")
    try:
        if head == "ev" and arg:
            return evaluation_hom(int(arg))
        if head == "proj" and arg:
            return projection_hom(int(arg))
        if head == "const" and arg:
            return constant_hom(algebra_by_name(arg))
    except ValueError:
        pass
    raise DomainError(f"unknown homomorphism {name!r}")


def extend(T: NumTable, A: NumAlgebra, z: TensorElem | Sequence[Any]) -> TensorElem:
    """The extension of T to Z^k (x) A, computed entirely inside A."""
    comps = z.components if isinstance(z, TensorElem) else tuple(z)
    if len(comps) != T.k:
        raise ShapeError(f"table has k={T.k}, tensor element has rank {len(comps)}")
    return TensorElem(A, eval_table(T, comps, A))


@dataclass
class NaturalityReport:
    hom: str
    checked: int = 0
    mismatches: list[tuple[TensorElem, TensorElem, TensorElem]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {
            "hom": self.hom,
            "ok": self.ok,
            "checked": self.checked,
            "mismatches": [{"z": z.to_json(), "image_then_extend": a.to_json(),
                            "extend_then_image": b.to_json()} for z, a, b in self.mismatches],
        }


def check_naturality(T: NumTable, h: AlgebraHom, zs: Sequence[TensorElem | Sequence[Any]]) -> NaturalityReport:
    """Compare h(extend_source(z)) with extend_target(h(z)) for every z."""
    report = NaturalityReport(h.name)
    for z in zs:
        z = z if isinstance(z, TensorElem) else TensorElem(h.source, z)
        across = TensorElem(h.target, [h(c) for c in extend(T, h.source, z).components])
        down = extend(T, h.target, [h(c) for c in z.components])
        report.checked += 1
        if not across.equals(down):
            report.mismatches.append((z, across, down))
    return report


@dataclass
class CounterexampleReport:
    """Monomial coefficients (constant term first) of a map Z -> Z."""

    name: str
    degree_bound: int
    coefficients: list[Fraction]
    integral: bool
    numerical: NumTable

    @property
    def non_integral(self) -> list[tuple[int, Fraction]]:
        return [(i, c) for i, c in enumerate(self.coefficients) if c.denominator != 1]

    def to_json(self) -> dict[str, Any]:
        return {
            "map": self.name,
            "D": self.degree_bound,
            "monomial_coefficients": [str(c) for c in self.coefficients],
            "integral": self.integral,
            "non_integral": [{"power": i, "c": str(c)} for i, c in self.non_integral],
            "numerical_table": self.numerical.to_json(),
        }


def demo_counterexample(D: int, phi: MapOracle | None = None, name: str | None = None) -> CounterexampleReport:
    """Monomial-basis form of ``x -> binom(x, 2)`` (or another Z -> Z map) up to degree D.

    The representation agreeing with the map on Z is unique, so any
    non-integral coefficient rules out an integral strict table of degree <= D.
    """
    if D < 0:
        raise DomainError("D must be natural")
    if phi is None:
        phi = MapOracle.scalar(lambda x: binom(x, 2), name="binom(x,2)")
    if phi.k != 1 or phi.m != 1:
        raise ShapeError("the counterexample demo takes a map Z -> Z")
    T = extract(phi, D)
    S, integral = numerical_to_strict_rational(T)
    coeffs = [Fraction(S[(j,)][0]) for j in range(D + 1)]
    return CounterexampleReport(name or phi.name, D, coeffs, integral, T)


def square_map() -> MapOracle:
    return MapOracle.scalar(lambda x: x * x, name="x^2")


def generic_separation(T1: NumTable, T2: NumTable, fillers: Sequence[int] | None = None) -> bool:
    """True if extending over Int(Z) one coordinate at a time distinguishes T1 from T2.

    Coordinate j is set to the generic element x and the remaining
    coordinates sweep ``fillers`` (default 0..n, enough to separate tables
    of degree <= n by triangularity of binom(a, X)).
    """
    if (T1.k, T1.m) != (T2.k, T2.m):
        return True
    if fillers is None:
        fillers = range(max(T1.n, T2.n) + 1)
    for j in range(T1.k):
        for rest in itertools.product(fillers, repeat=T1.k - 1):
            z = [INT_Z.embed(f) for f in rest]
            z.insert(j, NumPoly.x())
            if not extend(T1, INT_Z, z).equals(extend(T2, INT_Z, z)):
                return True
    return False
