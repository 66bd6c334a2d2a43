import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conetract.algebra import (
    HomogeneousForm,
    PrimeField,
    basis_size,
    binomial,
    embed,
    forms_from_rows,
    is_prime,
    macaulay_rows,
    monomial_exponents,
    monomial_index,
    next_prime,
)

P = 257


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert next_prime(256) == 257
    assert next_prime(257) == 263


def test_field_rejects_small_and_composite():
    for bad in (2, 5, 9, 1001):
        with pytest.raises(ValueError):
            PrimeField(bad)
    k = PrimeField(P)
    assert k.mul(k.inv(17), 17) == 1
    with pytest.raises(ZeroDivisionError):
        k.inv(0)


def test_monomial_order_is_graded_lex():
    e = monomial_exponents(3, 2)
    assert [tuple(r) for r in e] == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert basis_size(5, 5) == 126
    assert list(monomial_index(3, 2, e)) == list(range(6))


def test_small_product():
    x, y = (HomogeneousForm.variable(2, i, P) for i in range(2))
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert f.evaluate((3, 2)) == 5


def test_euler_identity(rng):
    # sum x_i df/dx_i = deg(f) f
    f = HomogeneousForm.random(5, 5, P, rng)
    xs = [HomogeneousForm.variable(5, i, P) for i in range(5)]
    lhs = xs[0] * f.partial(0)
    for i in range(1, 5):
        lhs = lhs + xs[i] * f.partial(i)
    assert lhs == f.scale(5)


def test_product_rule(rng):
    f = HomogeneousForm.random(4, 3, P, rng)
    g = HomogeneousForm.random(4, 2, P, rng)
    for i in range(4):
        assert (f * g).partial(i) == f.partial(i) * g + f * g.partial(i)


def test_text_round_trip(rng):
    f = HomogeneousForm.random(4, 4, P, rng)
    assert HomogeneousForm.from_text(f.to_text()) == f


def test_evaluate_many_agrees(rng):
    f = HomogeneousForm.random(4, 5, P, rng)
    pts = rng.integers(0, P, size=(20, 4))
    assert list(f.evaluate_many(pts)) == [f.evaluate(q) for q in pts]


def test_macaulay_rows_span_multiples(rng):
    g = HomogeneousForm.random(3, 2, P, rng)
    rows = macaulay_rows(g, 4)
    assert rows.shape == (basis_size(3, 2), basis_size(3, 4))
    products = forms_from_rows(rows, 3, 4, P)
    x = HomogeneousForm.variable(3, 0, P)
    assert products[0] == x * x * g


def test_embed_adds_a_variable(rng):
    f = HomogeneousForm.random(4, 3, P, rng)
    F = embed(f, 5)
    pt = rng.integers(0, P, size=4)
    assert F.evaluate(list(pt) + [11]) == f.evaluate(pt)


def test_binomial():
    assert binomial(9, 4) == 126
    assert binomial(3, 5) == 0


forms = st.integers(0, 2 ** 32 - 1).map(np.random.default_rng)


@settings(max_examples=30, deadline=None)
@given(forms, st.integers(1, 3), st.integers(1, 3), st.integers(1, 2))
def test_associative_and_distributive(r, a, b, c):
    f, g, h = (HomogeneousForm.random(3, k, P, r) for k in (a, b, c))
    assert (f * g) * h == f * (g * h)
    h2 = HomogeneousForm.random(3, b, P, r)
    assert f * (g + h2) == f * g + f * h2


@settings(max_examples=30, deadline=None)
@given(forms, st.integers(0, 4))
def test_evaluation_is_a_ring_map(r, a):
    f = HomogeneousForm.random(4, a, P, r)
    g = HomogeneousForm.random(4, 2, P, r)
    pt = r.integers(0, P, size=4)
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) % P
