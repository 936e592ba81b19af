import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssekit.errors import BranchOutOfRange, DimensionMismatch, EmptyChain, SearchSpaceTooLarge
from ssekit.graph_core import from_matrix, trace_sequence
from ssekit.splitting import out_split
from ssekit.sse import (
    CuntzFamily,
    ElementaryEquivalence,
    SSEChain,
    chain_backward_matrix,
    chain_forward_matrix,
    chain_from_witnesses,
    dhat,
    edge_pairing,
    search_elementary,
    verify_chain,
    verify_elementary,
    verify_partition,
)

from _gen import matrices_with_out_partition

GOLDEN = [[1, 1], [1, 0]]


def two_witness():
    return ElementaryEquivalence([[2]], [[1, 1], [1, 1]], [[1, 1]], [[1], [1]])


def golden_witness():
    G = from_matrix(GOLDEN)
    return ElementaryEquivalence.from_split(out_split(G, [[[0], [1]], [[2]]]))


def test_verify_examples():
    assert verify_elementary(two_witness())
    assert verify_elementary(golden_witness())
    assert not verify_elementary([[2]], [[3]], [[1]], [[2]])


def test_forged_witness_reports_first_entry():
    v = verify_elementary([[2]], [[1, 1], [1, 1]], [[1, 2]], [[1], [1]])
    assert not v
    assert v.locus == "entry (1,1) of CD"
    assert str(v).startswith("REFUTED entry (1,1) of CD")
    v = verify_elementary([[2]], [[1, 1], [1, 2]], [[1, 1]], [[1], [1]])
    assert v.locus == "entry (2,2) of DC"


def test_warnings_for_degenerate_endpoints():
    v = verify_elementary([[0, 1], [1, 0]], [[0, 1], [1, 0]], [[1, 0], [0, 1]], [[0, 1], [1, 0]])
    assert v and any("permutation" in w for w in v.warnings)
    v = verify_elementary([[1, 1], [0, 1]], [[1, 1], [0, 1]], np.eye(2, dtype=int), [[1, 1], [0, 1]])
    assert v and any("reducible" in w for w in v.warnings)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        verify_elementary([[2]], [[1, 1], [1, 1]], [[1, 1]], [[1, 1]])


def test_chains():
    assert verify_chain(SSEChain([two_witness()]))
    chain = chain_from_witnesses([([[1, 1]], [[1], [1]]), ([[1], [1]], [[1, 1]])])
    assert verify_chain(chain)
    assert chain.matrices[-1] == [[2]]
    bad = SSEChain([two_witness(), golden_witness()])
    v = verify_chain(bad)
    assert not v and v.locus == "step 2"
    with pytest.raises(EmptyChain):
        SSEChain([])


def test_forward_backward_products():
    chain = chain_from_witnesses([([[1, 1]], [[1], [1]]), ([[1], [1]], [[1, 1]])])
    assert chain_forward_matrix(chain).tolist() == [[2]]
    assert chain_backward_matrix(chain).tolist() == [[2]]
    assert np.array_equal(chain_forward_matrix(SSEChain([golden_witness()])), golden_witness().C)


def test_pairing_two_witness():
    p = edge_pairing(two_witness())
    # C-edges c1 (1->1), c2 (1->2); D-edges d1 (1->1), d2 (2->1)
    assert p.a_pairs == ((0, 0), (1, 1))
    assert p.b_pairs == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_pairing_counts_golden():
    p = edge_pairing(golden_witness())
    assert len(p.a_pairs) == 3 and len(p.b_pairs) == 5


def test_pairing_identity_witness():
    A = [[1, 1], [1, 0]]
    ee = ElementaryEquivalence(A, A, np.eye(2, dtype=int), A)
    p = edge_pairing(ee)
    assert [d for _, d in p.a_pairs] == [0, 1, 2]


def test_dhat_examples():
    assert dhat(two_witness()).tolist() == [[1, 1, 0, 0], [0, 0, 1, 1]]
    assert dhat(golden_witness()).tolist() == [[1, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 1]]
    I = np.eye(2, dtype=int)
    assert dhat(ElementaryEquivalence(I, I, I, I)).tolist() == I.tolist()


def _brute_force(A, B, bound):
    # plain enumeration of all (C, D) pairs, no pruning
    A, B = np.array(A), np.array(B)
    n, m = len(A), len(B)
    out = []
    for flat in itertools.product(range(bound + 1), repeat=2 * n * m):
        C = np.array(flat[: n * m]).reshape(n, m)
        D = np.array(flat[n * m :]).reshape(m, n)
        if np.array_equal(C @ D, A) and np.array_equal(D @ C, B):
            out.append((C.tolist(), D.tolist()))
    return sorted(out, key=lambda cd: (sum(cd[0], []), sum(cd[1], [])))


@pytest.mark.parametrize(
    "A,B,bound",
    [([[2]], [[1, 1], [1, 1]], 1), ([[1]], [[1]], 1), ([[2]], [[3]], 2), (GOLDEN, [[1, 1], [1, 0]], 1), ([[2]], [[2]], 2)],
)
def test_search_matches_brute_force(A, B, bound):
    found = [(e.C.tolist(), e.D.tolist()) for e in search_elementary(A, B, bound)]
    assert found == _brute_force(A, B, bound)


def test_search_examples():
    found = search_elementary([[2]], [[1, 1], [1, 1]], 1)
    assert [(e.C.tolist(), e.D.tolist()) for e in found] == [([[1, 1]], [[1], [1]])]
    assert search_elementary([[2]], [[3]], 2) == []
    assert [(e.C.tolist(), e.D.tolist()) for e in search_elementary([[1]], [[1]], 1)] == [([[1]], [[1]])]


def test_search_cap():
    with pytest.raises(SearchSpaceTooLarge):
        search_elementary(GOLDEN, [[1, 1, 0], [0, 0, 1], [1, 1, 0]], 3, max_candidates=10**6)


def test_cuntz_examples():
    k2 = CuntzFamily(2)
    assert [k2.apply(1, j) for j in range(1, 5)] == [1, 3, 5, 7]
    assert [k2.apply(2, j) for j in range(1, 5)] == [2, 4, 6, 8]
    k1 = CuntzFamily(1)
    assert [k1.apply(1, j) for j in range(1, 6)] == [1, 2, 3, 4, 5]
    k3 = CuntzFamily(3)
    assert [k3.image(i, 9) for i in (1, 2, 3)] == [[1, 4, 7], [2, 5, 8], [3, 6, 9]]
    assert verify_partition(k3, 9)
    with pytest.raises(BranchOutOfRange):
        k3.apply(4, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 16), st.integers(1, 10**6))
def test_cuntz_inverse(k, n):
    fam = CuntzFamily(k)
    i, j = fam.inverse(n)
    assert fam.apply(i, j) == n


@settings(max_examples=60, deadline=None)
@given(matrices_with_out_partition())
def test_split_witness_properties(case):
    A, G, P = case
    ee = ElementaryEquivalence.from_split(out_split(G, P))
    assert verify_elementary(ee)
    assert trace_sequence(ee.A, 12) == trace_sequence(ee.B, 12)
    p = edge_pairing(ee)
    D = dhat(ee, p)
    assert set(np.unique(D)) <= {0, 1}
    for i, (_, d) in enumerate(p.a_pairs):
        assert D[i].sum() == sum(1 for dd, _ in p.b_pairs if dd == d) >= 1
    for l, (d, _) in enumerate(p.b_pairs):
        assert D[:, l].sum() == sum(1 for _, dd in p.a_pairs if dd == d) >= 1
    # each pair is a genuine composable length-two path
    for i, (c, d) in enumerate(p.a_pairs):
        e = p.A_edges[i]
        assert (p.C_edges[c].source, p.D_edges[d].target) == (e.source, e.target)
        assert p.C_edges[c].target == p.D_edges[d].source
    assert verify_elementary(ee.reversed())
