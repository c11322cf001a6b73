from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF as SymGF, QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from gradedhom.exact_linalg import (Field, Matrix, ShapeError, complement_columns, image_basis, kernel_basis,
                                    matmul, rank, rref, solve)

from conftest import GF, QQ


def oracle_rank(rows, field):
    if not rows or not rows[0]:
        return 0
    if field.p is None:
        return DomainMatrix.from_list([[SymQQ(int(x)) for x in r] for r in rows], SymQQ).rank()
    dom = SymGF(field.p)
    return DomainMatrix([[dom(int(x)) for x in r] for r in rows], (len(rows), len(rows[0])), dom).rank()


small = st.integers(-4, 4)


def matrices(max_side=7):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field.prime(100)


def test_field_scalar_and_inverse():
    assert GF.scalar(Fraction(1, 2)) * 2 % 101 == 1
    assert GF.inv(5) * 5 % 101 == 1
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)


def test_rref_known_example():
    a = QQ.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, piv = rref(a, QQ)
    assert piv == [0, 1]
    assert r[0].tolist() == [1, 0, 1]
    assert r[1].tolist() == [0, 1, 1]
    assert np.all(r[2] == 0)


def test_rank_over_gf_differs_from_rationals():
    # determinant 101 vanishes only in characteristic 101
    a = [[1, 0], [0, 101]]
    assert rank(QQ.array(a), QQ) == 2
    assert rank(GF.array(a), GF) == 1


def test_matmul_shape_error():
    with pytest.raises(ShapeError):
        matmul(GF.zeros((2, 3)), GF.zeros((2, 3)), GF)


def test_solve_inconsistent_returns_none():
    a = QQ.array([[1, 1], [1, 1]])
    b = QQ.array([[1], [2]])
    assert solve(a, b, QQ) is None


@given(matrices(), st.sampled_from([QQ, GF]))
def test_rank_matches_sympy(rows, field):
    assert rank(field.array(rows), field) == oracle_rank(rows, field)


@given(matrices(), st.sampled_from([QQ, GF]))
def test_kernel_is_null_and_complementary(rows, field):
    a = field.array(rows)
    k = kernel_basis(a, field)
    assert k.shape == (a.shape[1], a.shape[1] - rank(a, field))
    assert np.all(field.reduce(matmul(a, k, field)) == 0)
    assert rank(k, field) == k.shape[1]


@given(matrices(), st.sampled_from([QQ, GF]))
def test_rank_transpose_invariant(rows, field):
    a = field.array(rows)
    assert rank(a, field) == rank(a.T.copy(), field)


@given(matrices(), st.sampled_from([QQ, GF]), st.integers(0, 10_000))
def test_solve_recovers_consistent_systems(rows, field, seed):
    a = field.array(rows)
    x0 = field.random(np.random.default_rng(seed), (a.shape[1], 2))
    b = matmul(a, x0, field)
    x = solve(a, b, field)
    assert x is not None
    assert np.all(field.reduce(matmul(a, x, field) - b) == 0)


@given(matrices(), st.sampled_from([QQ, GF]))
def test_image_basis_spans_column_space(rows, field):
    a = field.array(rows)
    im = image_basis(a, field)
    assert im.shape[1] == rank(a, field)
    both = np.concatenate([im, a], axis=1)
    assert rank(both, field) == im.shape[1]


@given(st.data(), st.sampled_from([QQ, GF]))
def test_complement_extends_span(data, field):
    r = data.draw(st.integers(1, 6))
    grid = lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
    a = field.array(data.draw(grid(data.draw(st.integers(1, 5)))))
    b = field.array(data.draw(grid(data.draw(st.integers(1, 5)))))
    keep = complement_columns(a, b, field)
    joined = np.concatenate([a, b[:, keep]], axis=1)
    assert rank(joined, field) == rank(np.concatenate([a, b], axis=1), field)
    assert rank(joined, field) == rank(a, field) + len(keep)


def test_block_split_rank_matches_dense():
    # a large block-diagonal rational matrix exercises the component split
    rng = np.random.default_rng(3)
    blocks = [rng.integers(-2, 3, size=(20, 25)) for _ in range(12)]
    big = np.zeros((240, 300), dtype=np.int64)
    for i, b in enumerate(blocks):
        big[20 * i:20 * (i + 1), 25 * i:25 * (i + 1)] = b
    expected = sum(oracle_rank(b.tolist(), QQ) for b in blocks)
    assert rank(QQ.array(big.tolist()), QQ) == expected
    assert rank(GF.array(big.tolist()), GF) == sum(oracle_rank(b.tolist(), GF) for b in blocks)


def test_matrix_wrapper_roundtrip():
    m = Matrix.from_rows([[1, 2], [3, 4]], QQ)
    assert m.rank() == 2
    assert (m @ Matrix.identity(2, QQ)) == m
    assert m.transpose().transpose() == m
    assert m.kernel_basis().cols == 0
    with pytest.raises(ValueError):
        m @ Matrix.identity(2, GF)
