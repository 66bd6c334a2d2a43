import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conetract.linalg import (
    full_space,
    kernel,
    matmul_mod,
    nullspace,
    rank,
    rref,
    span,
    zero_space,
)

P = 257


def low_rank(rng, rows, cols, r, p=P):
    return matmul_mod(rng.integers(0, p, (rows, r)), rng.integers(0, p, (r, cols)), p)


def test_rref_shape_and_pivots(rng):
    m = low_rank(rng, 9, 12, 5)
    r, piv = rref(m, P)
    assert len(piv) == 5 and list(piv) == sorted(piv)
    assert (r[:, list(piv)] == np.eye(5, dtype=np.int64)).all()


def test_rank_against_sympy(rng):
    for r in (0, 1, 4, 7):
        m = low_rank(rng, 8, 10, r) if r else np.zeros((8, 10), np.int64)
        dm = sympy.polys.matrices.DomainMatrix.from_list_sympy(8, 10, m.tolist()).convert_to(sympy.GF(P))
        assert rank(m, P) == dm.rank()


def test_nullspace_is_kernel(rng):
    m = low_rank(rng, 6, 11, 4)
    ns = nullspace(m, P)
    assert ns.shape == (7, 11)
    assert not matmul_mod(m, ns.T, P).any()


def test_rref_crosses_row_blocks(rng):
    # more rows than one elimination block
    m = low_rank(rng, 300, 40, 33)
    assert rank(m, P) == 33


def test_matmul_mod_matches_object_arithmetic(rng):
    p = 1048573
    a = rng.integers(0, p, (5, 3000))
    b = rng.integers(0, p, (3000, 4))
    exact = (a.astype(object) @ b.astype(object)) % p
    assert (matmul_mod(a, b, p) == exact.astype(np.int64)).all()


def test_subspace_basics(rng):
    v = span(low_rank(rng, 3, 6, 3), P)
    assert v.dim == 3 and v.codim == 3
    assert all(v.contains(b) for b in v.basis)
    assert v.issubspace(full_space(6, P))
    assert zero_space(6, P).issubspace(v)
    assert (v & zero_space(6, P)).dim == 0
    assert (v + full_space(6, P)).dim == 6
    assert not matmul_mod(v.constraints(), v.basis.T, P).any()


def test_kernel_of_empty_matrix():
    assert kernel(np.zeros((0, 4), np.int64), P).dim == 4


def test_span_rejects_ragged():
    with pytest.raises(ValueError):
        span([[1, 2], [1, 2, 3]], P)


def test_rref_is_deterministic(rng):
    m = low_rank(rng, 40, 30, 20)
    a, pa = rref(m, P)
    b, pb = rref(m.copy(), P)
    assert pa == pb and (a == b).all()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 6), st.integers(0, 6))
def test_grassmann_identity(seed, ra, rb):
    r = np.random.default_rng(seed)
    n = 8
    a = span(low_rank(r, max(ra, 1), n, ra) if ra else np.zeros((0, n), np.int64), P, n)
    b = span(low_rank(r, max(rb, 1), n, rb) if rb else np.zeros((0, n), np.int64), P, n)
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert (a & b).issubspace(a) and (a & b).issubspace(b)
