from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistedreps import GF, QQ, Matrix
from twistedreps import _kernels_py
from twistedreps.errors import DimensionMismatch, FieldMismatch
from twistedreps.linalg import (
    BACKEND,
    Coordinates,
    cokernel_projection,
    hstack,
    kernel_basis,
    kron,
    rank,
    rref,
    solve,
)

F5 = GF(5)


def matrices(field, max_rows=5, max_cols=5):
    if field.p:
        elem = st.integers(0, field.p - 1)
    else:
        elem = st.fractions(min_value=-4, max_value=4, max_denominator=3)

    @st.composite
    def build(draw):
        m = draw(st.integers(0, max_rows))
        n = draw(st.integers(0, max_cols))
        rows = [[draw(elem) for _ in range(n)] for _ in range(m)]
        return Matrix(field, field.array(rows, shape=(m, n)) if m * n else field.zeros((m, n)))

    return build()


any_matrix = st.one_of(matrices(F5), matrices(QQ))


# -- worked examples ----------------------------------------------------------


def test_rref_identity():
    R, piv, r = rref(Matrix.identity(QQ, 2))
    assert R == Matrix.identity(QQ, 2)
    assert piv == [0, 1] and r == 2


def test_rref_zero():
    R, piv, r = rref(Matrix.zeros(QQ, 3, 4))
    assert R.is_zero() and piv == [] and r == 0


def test_rref_rank_one_over_rationals():
    _, piv, r = rref(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))
    assert r == 1 and piv == [0]


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(F5, 3)).cols == 0
    assert rank(kernel_basis(Matrix.zeros(F5, 3, 3))) == 3
    K = kernel_basis(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))
    assert K.cols == 1
    assert K == Matrix.from_rows(QQ, [[-2], [1]])


def test_solve_examples():
    b = Matrix.from_rows(QQ, [[1], [2]])
    assert solve(Matrix.identity(QQ, 2), b) == b
    assert solve(Matrix.zeros(QQ, 2, 2), b) is None
    x = solve(Matrix.from_rows(QQ, [[1, 1]]), Matrix.from_rows(QQ, [[3]]))
    assert x == Matrix.from_rows(QQ, [[3], [0]])


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve(Matrix.identity(QQ, 2), Matrix.zeros(QQ, 3, 1))


def test_cokernel_examples():
    assert cokernel_projection(Matrix.identity(F5, 3)).rows == 0
    assert cokernel_projection(Matrix.zeros(F5, 2, 2)) == Matrix.identity(F5, 2)
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    C = cokernel_projection(m)
    assert C.shape == (1, 2) and (C @ m).is_zero() and C.rank() == 1


def test_kron_examples():
    assert kron(Matrix.identity(F5, 2), Matrix.identity(F5, 3)) == Matrix.identity(F5, 6)
    a = Matrix.from_rows(F5, [[1, 2], [3, 4]])
    assert kron(a, Matrix.identity(F5, 1)) == a
    assert kron(Matrix.from_rows(QQ, [[2]]), Matrix.from_rows(QQ, [[3]])) == Matrix.from_rows(QQ, [[6]])


def test_kron_index_convention():
    a = Matrix.from_rows(QQ, [[1, 0], [0, 2]])
    b = Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    K = kron(a, b)
    # entry ((i, j), (k, l)) sits at (i * 2 + j, k * 2 + l)
    assert K.a[1 * 2 + 0, 1 * 2 + 1] == 2


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Matrix.identity(F5, 2) @ Matrix.identity(QQ, 2)
    with pytest.raises(FieldMismatch):
        hstack([Matrix.identity(F5, 2), Matrix.identity(GF(7), 2)])


def test_scalars_canonical():
    assert QQ("6/4") == Fraction(3, 2)
    assert F5(-1) == 4
    assert F5("1/2") == 3
    with pytest.raises(ValueError):
        GF(6)


def test_rational_entries_stay_exact():
    m = Matrix.from_rows(QQ, [[3, 1], [1, 3]])
    x = solve(m, Matrix.from_rows(QQ, [[1], [0]]))
    assert x.a[0, 0] == Fraction(3, 8) and x.a[1, 0] == Fraction(-1, 8)


# -- properties ----------------------------------------------------------------


@given(any_matrix)
def test_rank_nullity(m):
    K = kernel_basis(m)
    assert rank(m) + K.cols == m.cols
    assert (m @ K).is_zero()
    assert K.rank() == K.cols


@given(any_matrix)
def test_cokernel_properties(m):
    C = cokernel_projection(m)
    assert (C @ m).is_zero()
    assert C.rank() == C.rows == m.rows - rank(m)


@given(any_matrix)
def test_rref_preserves_row_space(m):
    R, piv, r = rref(m)
    assert r == len(piv)
    assert R[r:, :].is_zero()
    # row spaces agree: stacking does not raise the rank
    assert rank(Matrix(m.field, np.vstack([m.a, R.a]))) == r


@given(st.data())
def test_solve_iff_rank(data):
    field = data.draw(st.sampled_from([F5, QQ]))
    A = data.draw(matrices(field, 4, 4))
    elem = st.integers(0, 4) if field.p else st.integers(-3, 3)
    cols = data.draw(st.integers(1, 2))
    entries = [[data.draw(elem) for _ in range(cols)] for _ in range(A.rows)]
    b = Matrix(field, field.array(entries, shape=(A.rows, cols)))
    if data.draw(st.booleans()) and A.cols:
        # force a consistent system half of the time
        b = A @ Matrix(field, field.array([[1] * cols] * A.cols, shape=(A.cols, cols)))
    x = solve(A, b)
    consistent = rank(A) == rank(hstack([A, b], field=field, rows=A.rows))
    assert (x is not None) == consistent
    if x is not None:
        assert A @ x == b


@given(any_matrix)
def test_deterministic(m):
    a1, p1, _ = rref(m)
    a2, p2, _ = rref(Matrix(m.field, m.a.copy()))
    assert a1 == a2 and p1 == p2
    assert kernel_basis(m) == kernel_basis(m)


@given(matrices(F5, 5, 5))
def test_coordinates_round_trip(m):
    from twistedreps.linalg import image_basis

    B = image_basis(m)
    c = Coordinates(B)
    assert B @ c(m) == m


def test_backend_parity():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.integers(0, 7, size=(6, 9)).astype(np.int64)
        b = a.copy()
        piv_py = list(_kernels_py.rref_modp(a, 7, -1))
        if BACKEND == "cython":
            from twistedreps import _kernels

            piv_c = list(_kernels.rref_modp(b, 7, -1))
            assert piv_c == piv_py and np.array_equal(a, b)
        x = rng.integers(0, 7, size=(5, 4)).astype(np.int64)
        y = rng.integers(0, 7, size=(4, 3)).astype(np.int64)
        expect = (x @ y) % 7
        assert np.array_equal(np.asarray(_kernels_py.matmul_modp(x, y, 7)), expect)
        if BACKEND == "cython":
            assert np.array_equal(np.asarray(_kernels.matmul_modp(x, y, 7)), expect)
