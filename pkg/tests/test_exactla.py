import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gph.exactla import (Field, Mat, ModP, block_diag, column_space, hstack, kernel_basis, kron, left_inverse,
                         quotient_maps, rank, rref, solve, solve_many, vstack)

QQ = Field()
F5 = Field(5)


def det_oracle(rows):
    """Laplace expansion over Fractions, independent of the elimination code."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_oracle(minor)
    return total


def minor_rank_oracle(rows, ncols):
    """Largest k with a nonzero k×k minor."""
    nrows = len(rows)
    for k in range(min(nrows, ncols), 0, -1):
        for ri in itertools.combinations(range(nrows), k):
            for ci in itertools.combinations(range(ncols), k):
                if det_oracle([[Fraction(rows[i][j]) for j in ci] for i in ri]) != 0:
                    return k
    return 0


small_matrix = st.integers(0, 4).flatmap(
    lambda r: st.integers(0, 4).flatmap(
        lambda c: st.tuples(st.just(r), st.just(c),
                            st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r))))


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_rank_matches_minor_oracle(data):
    r, c, rows = data
    m = Mat.from_ints(QQ, rows, ncols=c)
    assert rank(m) == minor_rank_oracle(rows, c)


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_kernel_basis_is_a_basis_of_the_kernel(data):
    r, c, rows = data
    m = Mat.from_ints(QQ, rows, ncols=c)
    ker = kernel_basis(m)
    assert len(ker) == c - rank(m)
    for v in ker:
        assert not any(m.apply(v))
    if ker:
        assert rank(Mat.from_columns(QQ, ker, c)) == len(ker)


@settings(max_examples=100, deadline=None)
@given(small_matrix)
def test_rref_is_idempotent_and_rank_preserving(data):
    _, c, rows = data
    m = Mat.from_ints(QQ, rows, ncols=c)
    red, piv = rref(m)
    red2, piv2 = rref(red)
    assert red2 == red and piv2 == piv
    assert len(piv) == rank(m)


def test_solve_consistent_and_inconsistent():
    m = Mat.from_ints(QQ, [[1, 2], [2, 4]])
    x = solve(m, [QQ(3), QQ(6)])
    assert m.apply(x) == [3, 6]
    assert solve(m, [QQ(1), QQ(0)]) is None


def test_solve_many_columns():
    m = Mat.from_ints(QQ, [[1, 0], [0, 2], [1, 1]])
    rhs = Mat.from_ints(QQ, [[1, 0], [2, 4], [2, 2]])
    x = solve_many(m, rhs)
    assert m @ x == rhs


def test_exact_rationals_stay_exact():
    m = Mat.from_literals(QQ, [["1/3", "1/2"], ["2/3", "1"]])
    assert rank(m) == 1
    inv = Mat.from_literals(QQ, [["1/3", "1/2"], ["0", "1"]]).inverse()
    assert inv.to_literals() == [["3", "-3/2"], ["0", "1"]]


def test_prime_field_arithmetic():
    a, b = F5(3), F5(4)
    assert a + b == F5(2)
    assert a * b == F5(2)
    assert a / b * b == a
    assert -a == F5(2)
    assert F5.parse("4") == b
    with pytest.raises(ValueError):
        F5.parse("7")
    with pytest.raises(ZeroDivisionError):
        a / F5(0)


def test_prime_field_rank_differs_from_rationals():
    rows = [[1, 2], [3, 1]]
    assert rank(Mat.from_ints(QQ, rows)) == 2
    assert rank(Mat.from_ints(F5, rows)) == 1


def test_non_prime_characteristic_rejected():
    with pytest.raises(ValueError):
        Field(6)


def test_rational_literal_validation():
    assert QQ.parse("-2/4") == QQ("-1/2")
    for bad in ("1/0", "x", 1.5, True):
        with pytest.raises((ValueError, ZeroDivisionError)):
            QQ.parse(bad)


def test_stacking_and_block_diag_shapes():
    a = Mat.from_ints(QQ, [[1, 2]])
    b = Mat.from_ints(QQ, [[3, 4], [5, 6]])
    assert vstack([a, b]).shape == (3, 2)
    assert hstack([b, b]).shape == (2, 4)
    d = block_diag([a, b], QQ)
    assert d.shape == (3, 4)
    assert d.rows[0][2] == 0 and d.rows[1][2] == 3


def test_kron_mixed_product():
    rng = random.Random(5)
    mats = [Mat.from_ints(QQ, [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]) for _ in range(4)]
    a, b, c, d = mats
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)
    assert kron(Mat.identity(QQ, 2), Mat.identity(QQ, 3)) == Mat.identity(QQ, 6)


def test_column_space_and_left_inverse():
    m = Mat.from_ints(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    cs = column_space(m)
    assert cs.ncols == rank(m) == 2
    li = left_inverse(cs)
    assert li @ cs == Mat.identity(QQ, 2)


@pytest.mark.parametrize("field", [QQ, F5])
def test_quotient_maps(field):
    span = Mat.from_ints(field, [[1, 0], [1, 1], [0, 1], [0, 0]])
    proj, sect = quotient_maps(span)
    assert proj.shape == (2, 4)
    assert (proj @ span).is_zero()
    assert proj @ sect == Mat.identity(field, 2)


def test_modp_hash_and_equality_with_ints():
    assert ModP(7, 5) == ModP(2, 5)
    assert len({ModP(7, 5), ModP(2, 5)}) == 1


def test_empty_matrices():
    z = Mat.zeros(QQ, 0, 3)
    assert rank(z) == 0
    assert len(kernel_basis(z)) == 3
    assert (Mat.zeros(QQ, 2, 0) @ Mat.zeros(QQ, 0, 4)).is_zero()
