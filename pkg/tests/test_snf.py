import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssekit.snf import det, smith_normal_form

from _oracles import determinantal_divisors, matmul
from _oracles import det as oracle_det


def check_smith(M):
    sf = smith_normal_form(M)
    U = [list(r) for r in sf.U]
    V = [list(r) for r in sf.V]
    m, n = len(M), len(M[0]) if M else 0
    if m and n:
        assert matmul(matmul(U, M), V) == sf.diagonal_matrix()
    assert abs(oracle_det(U)) == 1 and abs(oracle_det(V)) == 1
    d = list(sf.divisors)
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d == nz + [0] * (len(d) - len(nz))
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return d


def test_examples():
    assert check_smith([[0, -1], [-1, 1]]) == [1, 1]
    assert check_smith([[-2]]) == [2]
    assert check_smith([[0, 0], [0, 0]]) == [0, 0]


def test_rectangular_and_known():
    assert check_smith([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert check_smith([[1, 2, 3]]) == [1]
    assert check_smith([[2], [4]]) == [2]


def test_deterministic():
    M = [[4, 6, 2], [3, -9, 12], [0, 5, 5]]
    assert smith_normal_form(M) == smith_normal_form(M)


def test_bareiss_det():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[2, 0, 0], [0, 3, 0], [0, 0, 0]]) == 0
    assert det(np.zeros((0, 0), dtype=int)) == 1


def _mat(max_dim=5, bound=9):
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(
        lambda s: st.lists(st.lists(st.integers(-bound, bound), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
    )


@settings(max_examples=150, deadline=None)
@given(_mat())
def test_matches_determinantal_divisors(M):
    assert check_smith(M) == determinantal_divisors(M)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_laplace(M):
    assert det(M) == oracle_det(M)
