import pytest
from hypothesis import given, settings, strategies as st

from genkummer.exact_core import (
    IntegerMatrix,
    Inertia,
    block_diagonal,
    determinant,
    smith_normal_form,
    symmetric_inertia,
    unimodular_inverse,
)

from oracles import cofactor_det


def square(max_n=4, lo=-6, hi=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def symmetric(max_n=5, lo=-4, hi=4):
    def build(n):
        return st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
            lambda xs: _sym(n, xs)
        )
    return st.integers(1, max_n).flatmap(build)


def _sym(n, xs):
    g = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = next(it)
    return g


def unimodular(n, draw_ops):
    s = [[int(i == j) for j in range(n)] for i in range(n)]
    for i, j, q in draw_ops:
        if i % n != j % n:
            i, j = i % n, j % n
            for row in s:
                row[i] += q * row[j]
    return s


# --- determinant ------------------------------------------------------------


@pytest.mark.parametrize("m, expected", [
    ([[2, 1], [1, 2]], 3),
    ([[0, 1], [1, 0]], -1),
])
def test_determinant_small(m, expected):
    assert determinant(m) == expected


def test_determinant_lefschetz_order_two():
    minus_i = [[-1 if i == j else 0 for j in range(4)] for i in range(4)]
    i_minus_m = [[int(i == j) - minus_i[i][j] for j in range(4)] for i in range(4)]
    assert cofactor_det(i_minus_m) == 16
    assert determinant(i_minus_m) == 16


def test_determinant_rejects_nonsquare():
    with pytest.raises(ValueError):
        determinant([[1, 2, 3], [4, 5, 6]])


def test_floats_rejected():
    with pytest.raises(TypeError):
        IntegerMatrix([[1.0, 2], [3, 4]])


def test_determinant_big_entries():
    m = [[10**30 + i * j for j in range(6)] for i in range(6)]
    m[0][0] += 7
    assert determinant(m) == cofactor_det(m)


@settings(max_examples=200, deadline=None)
@given(square())
def test_determinant_matches_cofactor(m):
    assert determinant(m) == cofactor_det(m)


# --- Smith normal form -------------------------------------------------------


@pytest.mark.parametrize("m, factors", [
    ([[2, 0], [0, 2]], [2, 2]),
    ([[0, 1], [1, 0]], [1, 1]),
    ([[2, 1], [1, 2]], [1, 3]),
    ([[0, 0], [0, 0]], [0, 0]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_snf_examples(m, factors):
    snf = smith_normal_form(m)
    assert snf.factors == factors
    diag = snf.left @ m @ snf.right
    assert diag.tolist() == [[factors[i] if i == j else 0 for j in range(len(m[0]))] for i in range(len(m))]


def test_snf_rectangular():
    snf = smith_normal_form([[1, 2, 3], [4, 5, 6]])
    assert snf.factors == [1, 3]
    d = snf.left @ [[1, 2, 3], [4, 5, 6]] @ snf.right
    assert d.tolist() == [[1, 0, 0], [0, 3, 0]]


@settings(max_examples=200, deadline=None)
@given(square(max_n=4, lo=-9, hi=9))
def test_snf_properties(m):
    snf = smith_normal_form(m)
    n = len(m)
    d = snf.left @ m @ snf.right
    assert d.tolist() == [[snf.factors[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert abs(determinant(snf.left)) == 1 and abs(determinant(snf.right)) == 1
    assert all(f >= 0 for f in snf.factors)
    for a, b in zip(snf.factors, snf.factors[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    prod = 1
    for f in snf.factors:
        prod *= f
    assert prod == abs(determinant(m))


# --- inertia -----------------------------------------------------------------


def test_inertia_examples():
    assert symmetric_inertia([[0, 1], [1, 0]]) == Inertia(1, 1, 0)
    assert symmetric_inertia([[-2, 1], [1, -2]]) == Inertia(0, 2, 0)
    u = [[0, 1], [1, 0]]
    assert symmetric_inertia(block_diagonal(u, u, u)) == Inertia(3, 3, 0)
    assert symmetric_inertia([[0, 0], [0, 0]]) == Inertia(0, 0, 2)
    assert symmetric_inertia([[0, 0, 1], [0, 0, 0], [1, 0, 0]]) == Inertia(1, 1, 1)


def test_inertia_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        symmetric_inertia([[1, 2], [3, 4]])


def _eigen_inertia(g):
    import numpy as np

    w = np.linalg.eigvalsh(np.array(g, dtype=float))
    tol = 1e-9
    return Inertia(int((w > tol).sum()), int((w < -tol).sum()), int((abs(w) <= tol).sum()))


@settings(max_examples=200, deadline=None)
@given(symmetric())
def test_inertia_matches_eigenvalues(g):
    # small integer entries keep float eigenvalues well separated from 0
    assert symmetric_inertia(g) == _eigen_inertia(g)


@settings(max_examples=150, deadline=None)
@given(symmetric(max_n=4), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), max_size=6))
def test_inertia_congruence_invariant(g, ops):
    n = len(g)
    s = IntegerMatrix(unimodular(n, ops))
    assert abs(determinant(s)) == 1
    h = s.T @ g @ s
    assert symmetric_inertia(h) == symmetric_inertia(g)


def test_unimodular_inverse():
    s = IntegerMatrix([[1, 2], [1, 3]])
    assert (s @ unimodular_inverse(s)) == IntegerMatrix.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse([[2, 0], [0, 1]])
