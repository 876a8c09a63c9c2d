import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nummap.augment import (
    TruncPoly,
    chi_class,
    dev_class,
    dev_product,
    one_plus_t_pow,
    psi_image,
    scalar_relation_class,
    trunc_add,
    trunc_mul,
    universal_factor,
)
from nummap.errors import SchemaError, ShapeError
from nummap.multiset import enumerate_multisets
from nummap.numap import NumTable, eval_table, random_table

from oracles import one_plus_t_power_series


def tp(k, n, d):
    return TruncPoly(k, n, d)


def test_mul_by_one_and_truncation():
    p = tp(2, 3, {(1, 0): 4, (0, 2): -1, (0, 0): 2})
    assert trunc_mul(p, TruncPoly.one(2, 3)) == p
    t1 = TruncPoly.t(1, 0, 1)
    assert (t1 * t1).is_zero()


def test_expansion():
    one = TruncPoly.one(2, 2)
    got = (one + TruncPoly.t(2, 0, 2)) * (one + TruncPoly.t(2, 1, 2))
    assert got == tp(2, 2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert trunc_add(one, one) == 2 * one


def test_mismatched_shapes():
    with pytest.raises(ShapeError):
        TruncPoly.one(2, 2) + TruncPoly.one(2, 3)


def test_one_plus_t_pow():
    assert one_plus_t_pow(1, 0, 0, 3) == TruncPoly.one(1, 3)
    assert one_plus_t_pow(2, 1, 1, 2) == TruncPoly.one(2, 2) + TruncPoly.t(2, 1, 2)
    assert one_plus_t_pow(1, 0, -1, 2) == tp(1, 2, {(0,): 1, (1,): -1, (2,): 1})


def test_chi_class_examples():
    assert chi_class((0, 0), 3) == TruncPoly.one(2, 3)
    assert chi_class((1, 0), 2) == TruncPoly.one(2, 2) + TruncPoly.t(2, 0, 2)
    assert chi_class((2, 1), 2) == tp(2, 2, {(0, 0): 1, (1, 0): 2, (0, 1): 1, (2, 0): 1, (1, 1): 2})


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3), st.integers(0, 4))
def test_chi_class_matches_series(x, n):
    assert chi_class(x, n) == tp(len(x), n, one_plus_t_power_series(len(x), x, n))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_chi_is_multiplicative(x, y):
    s = [a + b for a, b in zip(x, y)]
    assert chi_class(s, 3) == chi_class(x, 3) * chi_class(y, 3)


def test_dev_class_examples():
    assert dev_class([(1,)], 2) == TruncPoly.t(1, 0, 2)
    assert dev_class([(1, 0), (0, 1)], 2) == tp(2, 2, {(1, 1): 1})
    assert dev_class([(3, -1), (2, 2), (0, 1)], 2).is_zero()
    assert dev_class([], 2, k=2) == TruncPoly.one(2, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dev_class_product_formula(seed):
    rng = random.Random(seed)
    k, n, t = rng.randint(1, 3), rng.randint(0, 4), rng.randint(0, 4)
    xs = [tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(t)]
    got = dev_class(xs, n, k)
    assert got == dev_product(xs, n, k)
    if t > n:
        assert got.is_zero()


def test_scalar_relation_examples():
    assert scalar_relation_class(0, (2, 1), 3).is_zero()
    assert scalar_relation_class(1, (2, 1), 3).is_zero()
    assert scalar_relation_class(-2, (1,), 3).is_zero()


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", range(5))
def test_scalar_relation_vanishes(k, n):
    rng = random.Random(100 * k + n)
    for r in range(-6, 7):
        x = tuple(rng.randint(-4, 4) for _ in range(k))
        assert scalar_relation_class(r, x, n).is_zero()


def test_psi_examples():
    assert psi_image((0, 0), 2) == TruncPoly.one(2, 2)
    assert psi_image((1, 1), 2) == tp(2, 2, {(1, 1): 1})
    assert psi_image((2, 0), 2) == tp(2, 2, {(2, 0): 1})


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", range(5))
def test_psi_is_monomial(k, n):
    for X in enumerate_multisets(k, n):
        assert psi_image(X, n) == TruncPoly.monomial(X, n)


def test_universal_factor_square():
    T = NumTable(1, 1, 2, {(1,): (1,), (2,): (2,)})
    U = universal_factor(T)
    assert U.assignment() == [((0,), (0,)), ((1,), (1,)), ((2,), (2,))]
    assert chi_class((3,), 2) == tp(1, 2, {(0,): 1, (1,): 3, (2,): 3})
    assert U(chi_class((3,), 2)) == (9,)


def test_universal_factor_constant_and_binomial():
    U = universal_factor(NumTable(1, 1, 2, {(0,): (5,)}))
    assert [v for _, v in U.assignment()] == [(5,), (0,), (0,)]
    B = universal_factor(NumTable(1, 1, 2, {(2,): (1,)}))
    p = tp(1, 2, {(0,): 4, (1,): -3, (2,): 11})
    assert B(p) == (11,)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_universal_triangle_commutes(seed):
    rng = random.Random(seed)
    T = random_table(rng)
    U = universal_factor(T)
    for _ in range(20):
        x = tuple(rng.randint(-6, 6) for _ in range(T.k))
        assert U(chi_class(x, T.n)) == tuple(eval_table(T, x))


def test_truncpoly_json():
    p = chi_class((2, 1), 2)
    data = p.to_json()
    assert data["coeffs"][0] == {"X": [0, 0], "c": "1"}
    assert TruncPoly.from_json(data) == p
    with pytest.raises(SchemaError):
        TruncPoly.from_json({"k": 1})
