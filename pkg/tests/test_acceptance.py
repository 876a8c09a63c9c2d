"""Exit criteria. Every check is exact; each test records one PASS/FAIL line."""
import itertools
import random
from fractions import Fraction

import pytest

from nummap.augment import (
    TruncPoly,
    chi_class,
    dev_class,
    dev_product,
    psi_image,
    scalar_relation_class,
    universal_factor,
)
from nummap.multiset import enumerate_multisets, repeat_args
from nummap.natural import (
    TensorElem,
    check_naturality,
    demo_counterexample,
    diagonal_hom,
    evaluation_hom,
    identity_hom,
    projection_hom,
    square_map,
)
from nummap.numap import (
    MapOracle,
    basis_vectors,
    check_eq1,
    check_eq2,
    default_sample,
    deviate,
    eval_table,
    extract,
    numerical_to_strict_rational,
    random_table,
    scalar_axiom_sides,
    strict_to_numerical,
    table_as_oracle,
    verify_degree,
)
from nummap.ring import INT_Z, Z, ProductRing, binom, lemma_binomial

from conftest import ACCEPTANCE_LINES

SEED = 20240601


def record(num, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {num}. {title}" + (f" ({detail})" if detail else ""))
    print(ACCEPTANCE_LINES[-1])
    assert ok, ACCEPTANCE_LINES[-1]


@pytest.fixture(scope="module")
def tables():
    rng = random.Random(SEED)
    return [random_table(rng) for _ in range(200)]


def test_1_binomial_lemma():
    cases = bad = 0
    for r in range(-10, 11):
        for n in range(7):
            for m in range(n + 1):
                lhs, rhs = lemma_binomial(r, m, n)
                cases += 1
                bad += lhs != rhs
    record(1, "binomial lemma, r in [-10,10], 0<=m<=n<=6", bad == 0 and cases == 21 * 28,
           f"{cases} cases, {bad} failures")


def test_2_extraction_roundtrip(tables):
    bad = sum(extract(table_as_oracle(T), T.n) != T for T in tables)
    record(2, "extract(table_as_oracle(T), n) == T", bad == 0, f"{len(tables)} tables, {bad} failures")


def test_3_deviation_vanishing_and_witness(tables):
    rng = random.Random(SEED + 3)
    vanish_bad = witness_bad = witnesses = 0
    for T in tables:
        phi = table_as_oracle(T)
        zero = (0,) * T.m
        for _ in range(20):
            xs = [tuple(rng.randint(-5, 5) for _ in range(T.k)) for _ in range(T.n + 1)]
            vanish_bad += deviate(phi, xs) != zero
        es = basis_vectors(T.k)
        for X in enumerate_multisets(T.k, T.n):
            if X.size == T.n:
                witnesses += 1
                witness_bad += deviate(phi, repeat_args(X, es)) != T[X]
    record(3, "(n+1)-st deviation vanishes; n-th deviation at basis reproduces top coefficients",
           vanish_bad == 0 and witness_bad == 0,
           f"{20 * len(tables)} vanishing checks, {witnesses} witnesses, {vanish_bad + witness_bad} failures")


def _cubical_explicit(phi, a, xs):
    """The displayed degree-3 formulas for one, two and three scaled vectors."""
    D = lambda *args: deviate(phi, list(args))[0]
    if len(xs) == 1:
        (a1,), (x1,) = a, xs
        return binom(a1, 1) * D(x1) + binom(a1, 2) * D(x1, x1) + binom(a1, 3) * D(x1, x1, x1)
    if len(xs) == 2:
        (a1, a2), (x1, x2) = a, xs
        return (binom(a1, 1) * binom(a2, 1) * D(x1, x2)
                + binom(a1, 2) * binom(a2, 1) * D(x1, x1, x2)
                + binom(a1, 1) * binom(a2, 2) * D(x1, x2, x2))
    (a1, a2, a3), (x1, x2, x3) = a, xs
    return binom(a1, 1) * binom(a2, 1) * binom(a3, 1) * D(x1, x2, x3)


def test_4_characterization_identities():
    rng = random.Random(SEED + 4)
    eq1_bad = eq2_bad = 0
    for _ in range(500):
        T = random_table(rng)
        phi = table_as_oracle(T)
        x = tuple(rng.randint(-4, 4) for _ in range(T.k))
        lhs, rhs = check_eq1(phi, T.n, rng.randint(-6, 6), x)
        eq1_bad += lhs != rhs
        t = rng.randint(0, T.n + 1)
        a = [rng.randint(-6, 6) for _ in range(t)]
        xs = [tuple(rng.randint(-4, 4) for _ in range(T.k)) for _ in range(t)]
        lhs, rhs = check_eq2(phi, T.n, a, xs)
        eq2_bad += lhs != rhs
    cubic_bad = cubic_cases = 0
    for _ in range(40):
        T = random_table(rng, m=1, n=3, density=0.8)
        phi = table_as_oracle(T)
        for t in (1, 2, 3):
            a = [rng.randint(-6, 6) for _ in range(t)]
            xs = [tuple(rng.randint(-4, 4) for _ in range(T.k)) for _ in range(t)]
            lhs, rhs = check_eq2(phi, 3, a, xs)
            want = _cubical_explicit(phi, a, xs)
            lhs_formula = deviate(phi, [tuple(ai * c for c in x) for ai, x in zip(a, xs)])[0]
            cubic_cases += 1
            cubic_bad += not (lhs == rhs == (want,) and lhs_formula == want)
        xs = [tuple(rng.randint(-4, 4) for _ in range(T.k)) for _ in range(4)]
        cubic_cases += 1
        cubic_bad += check_eq2(phi, 3, [rng.randint(-6, 6) for _ in range(4)], xs) != ((0,), (0,))
    record(4, "eq1/eq2 agree on 500 random instances each; cubical formulas verbatim",
           eq1_bad == eq2_bad == cubic_bad == 0,
           f"eq1 {eq1_bad}, eq2 {eq2_bad}, cubical {cubic_bad}/{cubic_cases} failures")


def test_5_polynomial_implies_numerical_over_z():
    rng = random.Random(SEED + 5)
    counterexamples = vanishing_levels = 0
    for _ in range(100):
        d = rng.randint(0, 4)
        cs = [rng.randint(-9, 9) for _ in range(d + 1)]
        phi = MapOracle.scalar(lambda x, cs=cs: sum(c * x**i for i, c in enumerate(cs)))
        for n in range(5):
            rep = verify_degree(phi, n, default_sample(1, n, -3, 3, -10, 10))
            if rep.deviation_violations:
                continue
            vanishing_levels += 1
            for r in range(-10, 11):
                for x in range(-5, 6):
                    lhs, rhs = scalar_axiom_sides(phi, n, r, (x,))
                    counterexamples += lhs != rhs
    record(5, "over Z, deviation vanishing at level n implies the scalar axiom",
           counterexamples == 0 and vanishing_levels > 0,
           f"{vanishing_levels} (oracle, n) pairs with vanishing deviation, {counterexamples} counterexamples")


def test_6_augmentation_model():
    rng = random.Random(SEED + 6)
    bad = {"product": 0, "dev": 0, "scalar": 0, "psi": 0, "universal": 0}
    for _ in range(200):
        k, n, t = rng.randint(1, 3), rng.randint(0, 4), rng.randint(0, 4)
        xs = [tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(t)]
        bad["product"] += dev_class(xs, n, k) != dev_product(xs, n, k)
    for k in range(1, 4):
        for n in range(5):
            for _ in range(10):
                xs = [tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(n + 1)]
                bad["dev"] += not dev_class(xs, n, k).is_zero()
            for r in range(-6, 7):
                x = tuple(rng.randint(-4, 4) for _ in range(k))
                bad["scalar"] += not scalar_relation_class(r, x, n).is_zero()
            for X in enumerate_multisets(k, n):
                bad["psi"] += psi_image(X, n) != TruncPoly.monomial(X, n)
    for _ in range(30):
        T = random_table(rng)
        U = universal_factor(T)
        for _ in range(100):
            x = tuple(rng.randint(-8, 8) for _ in range(T.k))
            bad["universal"] += U(chi_class(x, T.n)) != tuple(eval_table(T, x))
    record(6, "augmentation model: product formula, both ideal families killed, psi/chi inverse, universal factor",
           not any(bad.values()), ", ".join(f"{k} {v}" for k, v in bad.items()))


def _homs():
    homs = [identity_hom(Z), identity_hom(ProductRing(2)), identity_hom(INT_Z),
            diagonal_hom(), projection_hom(0), projection_hom(1)]
    homs += [evaluation_hom(a) for a in range(-5, 6)]
    homs += [diagonal_hom().then(projection_hom(1)), evaluation_hom(2).then(diagonal_hom())]
    return homs


def test_7_naturality_and_counterexample():
    rng = random.Random(SEED + 7)
    failures = []
    homs = _homs()
    for h in homs:
        for _ in range(50):
            T = random_table(rng)
            z = TensorElem(h.source, [h.source.random_element(rng) for _ in range(T.k)])
            if not check_naturality(T, h, [z]).ok:
                failures.append(h.name)
    demo = demo_counterexample(2)
    demo_ok = demo.coefficients == [0, Fraction(-1, 2), Fraction(1, 2)] and not demo.integral
    control = demo_counterexample(2, square_map())
    control_ok = control.coefficients == [0, 0, 1] and control.integral
    record(7, "naturality squares commute for all shipped homs; binom(x,2) demo exact",
           not failures and demo_ok and control_ok,
           f"{len(homs)} homs x 50 pairs, {len(failures)} mismatches; "
           f"binom(x,2) -> {[str(c) for c in demo.coefficients]} integral={demo.integral}; "
           f"x^2 integral={control.integral}")


def test_8_basis_conversions():
    rng = random.Random(SEED + 8)
    pointwise_bad = extract_bad = roundtrip_bad = 0
    for _ in range(100):
        S = random_table(rng, basis="monomial")
        T = strict_to_numerical(S)
        phi = table_as_oracle(S)
        extract_bad += extract(phi, S.n) != T
        for a in itertools.product(range(-4, 5), repeat=S.k):
            pointwise_bad += eval_table(T, a) != list(phi(a))
        back, integral = numerical_to_strict_rational(T)
        roundtrip_bad += not (integral and back == S)
    record(8, "strict_to_numerical agrees with extraction pointwise; rational inverse round-trips",
           pointwise_bad == extract_bad == roundtrip_bad == 0,
           f"pointwise {pointwise_bad}, extract {extract_bad}, round-trip {roundtrip_bad} failures")
