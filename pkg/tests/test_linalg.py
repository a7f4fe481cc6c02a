from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import sympy_rank

from lra.linalg import (
    format_rational,
    invert,
    kernel_basis,
    matrix_power_series,
    parse_rational,
    qarray,
    qeye,
    qzeros,
    rank,
    rref,
    solve,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0 if r == 0 else 1, max_cols).flatmap(
            lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=r, max_size=r).map(
                lambda rows: qarray(rows) if r else qzeros((0, c))
            )
        )
    )


def as_list(a):
    return [[v for v in row] for row in a]


# --- worked examples ---------------------------------------------------------


def test_rref_examples():
    m, piv = rref(qeye(2))
    assert as_list(m) == [[1, 0], [0, 1]] and piv == [0, 1]
    m, piv = rref(qarray([[1, 2], [2, 4]]))
    assert as_list(m) == [[1, 2], [0, 0]] and piv == [0]
    m, piv = rref(qarray([[0, 1], [1, 0]]))
    assert as_list(m) == [[1, 0], [0, 1]] and piv == [0, 1]


def test_rank_examples():
    assert rank(qzeros((3, 3))) == 0
    assert rank(qeye(4)) == 4
    assert rank(qarray([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(qeye(2)) == []
    assert len(kernel_basis(qzeros((1, 3)))) == 3
    (v,) = kernel_basis(qarray([[1, 2]]))
    assert v[1] != 0 and v[0] / v[1] == -2


def test_solve_examples():
    b = qarray([3, "1/2"])
    assert list(solve(qeye(2), b)) == list(b)
    assert solve(qarray([[1, 2], [2, 4]]), qarray([1, 3])) is None
    assert list(solve(qarray([[2]]), qarray([1]))) == [Fraction(1, 2)]
    with pytest.raises(ValueError):
        solve(qeye(2), qarray([1, 2, 3]))


def test_invert_examples():
    assert as_list(invert(qeye(3))) == as_list(qeye(3))
    assert invert(qzeros((2, 2))) is None
    assert as_list(invert(qarray([[1, 1], [0, 1]]))) == [[1, -1], [0, 1]]
    with pytest.raises(ValueError):
        invert(qzeros((2, 3)))


def test_invert_non_triangular():
    # regression: the augmented block must be reduced along with the matrix
    p = qarray([[1, 0, -1], [0, 1, -1], [-1, -1, 3]])
    inv = invert(p)
    assert as_list(inv @ p) == as_list(qeye(3))
    assert as_list(inv) == [[2, 1, 1], [1, 2, 1], [1, 1, 1]]


def test_rational_parsing_and_formatting():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == -4
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(6, 3)) == "2"
    for bad in (0.5, True):
        with pytest.raises(TypeError):
            parse_rational(bad)
    with pytest.raises(TypeError):
        qarray(np.array([0.5]))


def test_power_series_is_inverse_mod_t():
    p = qarray([[0, 1], [0, 0]])
    series = matrix_power_series(p, 3)
    # (I - tP) * sum t^i P^i = I + O(t^4)
    assert as_list(series[0]) == as_list(qeye(2))
    assert as_list(series[1] - p @ series[0]) == as_list(qzeros((2, 2)))
    assert as_list(series[2]) == as_list(qzeros((2, 2)))


# --- invariants --------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.shape[1]
    for v in kernel_basis(m):
        assert all(x == 0 for x in m @ v)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m)
    assert rank(m) == rank(m.T)


@settings(max_examples=60, deadline=None)
@given(matrices(4, 4), st.data())
def test_solve_contract(m, data):
    b = qarray(data.draw(st.lists(fractions, min_size=m.shape[0], max_size=m.shape[0]))) if m.shape[0] else qzeros(0)
    x = solve(m, b)
    if x is None:
        aug = np.concatenate([m, b.reshape(-1, 1)], axis=1)
        assert rank(aug) > rank(m)
    else:
        assert list(m @ x) == list(b)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_invert_contract(rows):
    m = qarray(rows)
    inv = invert(m)
    n = m.shape[0]
    if inv is None:
        assert rank(m) < n
    else:
        assert as_list(m @ inv) == as_list(qeye(n)) == as_list(inv @ m)


@given(fractions, fractions, fractions)
def test_exact_associativity(a, b, c):
    x, y, z = qarray([a]), qarray([b]), qarray([c])
    assert ((x + y) + z)[0] == (x + (y + z))[0]


def test_rref_is_reduced():
    m = qarray([[2, 4, 1], [1, 2, 0], [0, 0, 3]])
    r, piv = rref(m)
    assert piv == [0, 2]
    assert as_list(r) == [[1, 2, 0], [0, 0, 1], [0, 0, 0]]
