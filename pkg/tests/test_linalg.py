from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nokholo.linalg import (
    determinant,
    is_negative_definite,
    mat_vec,
    nullspace,
    primitive_integer_vector,
    rank,
    solve,
)

small = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def _cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _cofactor_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)))


def test_conic_determinant():
    m = [[0, 3, Fraction(-9, 2)], [3, 1, -4], [Fraction(-9, 2), -4, 9]]
    assert determinant(m) == Fraction(27, 4)
    assert _cofactor_det([[Fraction(x) for x in r] for r in m]) == Fraction(27, 4)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_determinant_matches_cofactor_expansion(m):
    assert determinant(m) == _cofactor_det(m)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(small, min_size=n, max_size=n))))
def test_solve(args):
    a, b = args
    if determinant(a) == 0:
        with pytest.raises(ZeroDivisionError):
            solve(a, b)
    else:
        assert mat_vec(a, solve(a, b)) == [Fraction(x) for x in b]


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_rank_nullity(m):
    kernel = nullspace(m, 4)
    assert len(kernel) + rank(m) == 4
    for v in kernel:
        assert not any(mat_vec(m, v))


def test_negative_definite():
    assert is_negative_definite([[-1]])
    assert is_negative_definite([[-2, 1], [1, -2]])
    assert not is_negative_definite([[-1, 2], [2, -1]])


def test_primitive_vector():
    assert primitive_integer_vector([Fraction(-1, 2), Fraction(3, 4), 0]) == [2, -3, 0]
