from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from htqft.exact import (Field, IntMatrix, KMatrix, QQ, SmithData, integer_kernel, parse_field,
                         smith_normal_form, solve_congruence, solve_linear)

small = st.integers(-6, 6)


def int_matrices(max_side=4):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def det(M):
    rows = M.tolist()
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * det(IntMatrix([r[:j] + r[j + 1:] for r in rows[1:]]))
               for j in range(n))


def test_snf_of_known_matrix():
    U, D, V = smith_normal_form(IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert D.diagonal() == [2, 6, 12]


@given(int_matrices())
def test_snf_factorization(rows):
    M = IntMatrix(rows)
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = [x for x in D.diagonal() if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    for i in range(D.rows):
        for j in range(D.cols):
            assert i == j or D[i, j] == 0


@given(int_matrices())
def test_integer_kernel_is_killed(rows):
    M = IntMatrix(rows)
    for v in integer_kernel(M):
        assert all(x == 0 for x in M @ v)
    assert len(integer_kernel(M)) == M.cols - SmithData(M).rank


@given(int_matrices(), st.data())
def test_solve_recovers_image(rows, data):
    M = IntMatrix(rows)
    x = data.draw(st.lists(small, min_size=M.cols, max_size=M.cols))
    b = M @ x
    y = SmithData(M).solve(b)
    assert y is not None and M @ y == b


def test_solve_congruence():
    A = IntMatrix([[2], [3]])
    part, basis = solve_congruence(A, [0, 1], [4, 5])
    assert (2 * part[0]) % 4 == 0 and (3 * part[0]) % 5 == 1
    assert solve_congruence(IntMatrix([[2]]), [1], [4]) is None


def test_fields():
    assert parse_field("Q") == QQ and parse_field("F5") == Field(5)
    with pytest.raises(ValueError):
        Field(4)
    F7 = Field(7)
    assert F7.scalar(3) * F7.scalar(5) == F7.one()
    assert (F7.scalar(3).inverse() * 3).is_one()
    assert QQ.scalar(Fraction(2, 3)) * 3 == QQ.scalar(2)
    assert F7.elem(10) == 3
    assert F7.scalar(Fraction(1, 2)) * 2 == F7.one()


@given(st.sampled_from([QQ, Field(2), Field(5)]), st.integers(1, 4), st.data())
def test_kmatrix_algebra(k, n, data):
    vals = st.integers(-3, 3)
    A = KMatrix.from_dense(k, data.draw(st.lists(st.lists(vals, min_size=n, max_size=n), min_size=n, max_size=n)))
    B = KMatrix.from_dense(k, data.draw(st.lists(st.lists(vals, min_size=n, max_size=n), min_size=n, max_size=n)))
    I = KMatrix.identity(k, n)
    assert A @ I == A == I @ A
    assert (A @ B).T() == B.T() @ A.T()
    assert (A + B) - B == A
    assert A.kron(B).shape == (n * n, n * n)
    assert A.kron(I) @ I.kron(B) == A.kron(B)


def test_solve_linear_and_rank():
    A = KMatrix.from_dense(QQ, [[1, 2], [2, 4]])
    assert A.rank() == 1
    B = KMatrix.from_dense(Field(2), [[1, 1], [1, 1]])
    assert B.rank() == 1


def test_ratio_to():
    A = KMatrix.from_dense(QQ, [[2, 4], [0, 6]])
    B = KMatrix.from_dense(QQ, [[1, 2], [0, 3]])
    assert A.ratio_to(B) == QQ.scalar(2)
