import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssekit.errors import ExplosionGuard, MalformedInput
from ssekit.graph_core import edge_graph, from_matrix
from ssekit.shift_space import (
    CylinderFunction,
    allowed_words,
    check_transfer_law,
    from_text,
    periodic_count,
    periodic_count_by_enumeration,
    phi_map,
    psi_map,
    shift_compose,
    to_text,
    word_cap,
    word_count_law,
)
from ssekit.splitting import in_split, out_split
from ssekit.sse import ElementaryEquivalence, edge_pairing

from _gen import essential_matrices, matrices_with_in_partition, matrices_with_out_partition

GOLDEN = [[1, 1], [1, 0]]
A_EDGE, B_EDGE, C_EDGE = 0, 1, 2


def golden_witness():
    return ElementaryEquivalence.from_split(out_split(from_matrix(GOLDEN), [[[0], [1]], [[2]]]))


def test_word_examples():
    assert len(allowed_words([[2]], 2)) == 4
    assert allowed_words(GOLDEN, 2) == [(0, 0), (0, 1), (1, 2), (2, 0), (2, 1)]
    assert allowed_words(GOLDEN, 1) == [(0,), (1,), (2,)]
    assert allowed_words(GOLDEN, 0) == [()]
    with pytest.raises(ExplosionGuard):
        allowed_words([[3]], 5, max_words=100)
    with word_cap(10), pytest.raises(ExplosionGuard):
        allowed_words([[3]], 3)


def test_periodic_examples():
    assert periodic_count([[2]], 3) == 8
    assert periodic_count(GOLDEN, 5) == 11
    assert periodic_count(np.eye(2, dtype=int), 7) == 2


def test_shift_compose_indicator():
    f = CylinderFunction.indicator(GOLDEN, (A_EDGE,))
    g = shift_compose(f)
    assert g.depth == 2
    assert {w for w, v in g.values.items() if v} == {(A_EDGE, A_EDGE), (C_EDGE, A_EDGE)}
    c = CylinderFunction.constant(GOLDEN, 5)
    assert shift_compose(c) == c
    assert shift_compose(shift_compose(f)) == CylinderFunction.from_callable(GOLDEN, 3, lambda w: f(w[2:]))


def test_phi_constant_and_indicator():
    ee = golden_witness()
    one = CylinderFunction.constant(GOLDEN, 1)
    assert phi_map(ee, one) == CylinderFunction.constant(ee.B, 1)
    f = CylinderFunction.indicator(GOLDEN, (A_EDGE,))
    image = phi_map(ee, f)
    p = edge_pairing(ee)
    expected = set()
    for b1, b2 in allowed_words(ee.B, 2):
        c = p.b_pairs[b1][1]
        d = p.b_pairs[b2][0]
        if p.a_pairs[A_EDGE] == (c, d):
            expected.add((b1, b2))
    assert {w for w, v in image.values.items() if v} == expected
    assert expected


def test_law_on_examples():
    ee = golden_witness()
    v = check_transfer_law(ee)
    assert v, v
    two = ElementaryEquivalence([[2]], [[1, 1], [1, 1]], [[1, 1]], [[1], [1]])
    assert check_transfer_law(two)
    assert check_transfer_law(two.reversed())


def test_cylinder_validation_and_lift():
    with pytest.raises(MalformedInput):
        CylinderFunction(GOLDEN, 1, {(0,): 1})
    f = CylinderFunction.indicator(GOLDEN, (B_EDGE,))
    assert f.lift(3) == f
    assert f.lift(3).depth == 3
    with pytest.raises(ValueError):
        f.lift(3).lift(1)
    assert f((B_EDGE, C_EDGE)) == 1


def test_text_round_trip():
    f = CylinderFunction.from_callable(GOLDEN, 2, lambda w: w[0] - w[1])
    text = to_text(f)
    assert text.splitlines()[0] == "depth 2"
    assert "1->1#1 1->2#1 : -1" in text
    assert from_text(GOLDEN, "# comment\n" + text) == f
    with pytest.raises(MalformedInput):
        from_text(GOLDEN, "depth 1\n1->1#1 : 1\n")


@settings(max_examples=40, deadline=None)
@given(essential_matrices(n_max=3, entry_max=2), st.integers(1, 4))
def test_word_counts(A, k):
    words = allowed_words(A, k)
    AG = np.asarray(edge_graph(A).AG)
    assert len(words) == int(np.linalg.matrix_power(AG, k - 1).sum())
    assert len(allowed_words(A, k + 1)) == word_count_law(A, k)


@settings(max_examples=40, deadline=None)
@given(essential_matrices(n_max=3, entry_max=2), st.integers(1, 5))
def test_periodic_counts_by_enumeration(A, n):
    assert periodic_count(A, n) == periodic_count_by_enumeration(A, n)


def _random_function(data, M, depth):
    words = allowed_words(M, depth)
    vals = data.draw(st.lists(st.integers(-5, 5), min_size=len(words), max_size=len(words)))
    return CylinderFunction(M, depth, dict(zip(words, vals)))


@settings(max_examples=40, deadline=None)
@given(matrices_with_out_partition(n_max=3, entry_max=2), st.integers(0, 2), st.data())
def test_law_and_additivity_out_splits(case, depth, data):
    A, G, P = case
    ee = ElementaryEquivalence.from_split(out_split(G, P))
    f1 = _random_function(data, ee.A, depth)
    f2 = _random_function(data, ee.A, depth)
    assert psi_map(ee, phi_map(ee, f1)) == shift_compose(f1)
    assert phi_map(ee, f1 + f2) == phi_map(ee, f1) + phi_map(ee, f2)
    g = _random_function(data, ee.B, depth)
    assert phi_map(ee, psi_map(ee, g)) == shift_compose(g)


@settings(max_examples=30, deadline=None)
@given(matrices_with_in_partition(n_max=3, entry_max=2), st.integers(0, 2), st.data())
def test_law_in_splits(case, depth, data):
    A, G, P = case
    ee = ElementaryEquivalence.from_split(in_split(G, P))
    f = _random_function(data, ee.A, depth)
    assert psi_map(ee, phi_map(ee, f)) == shift_compose(f)
    g = _random_function(data, ee.B, depth)
    assert phi_map(ee, psi_map(ee, g)) == shift_compose(g)
