"""State splitting and amalgamation of directed multigraphs.

An out-split divides every vertex I according to a partition of its outgoing
edges into blocks; the block-n copy of I is labelled ``"I^n"``.  An in-split
does the same with incoming edges and labels ``"J_n"``.  New vertices are
ordered by (old vertex, block index), and blocks by their least edge id.

Both splittings come with companion matrices C, D satisfying ``C @ D == A``
and ``D @ C == split_matrix``, so each split is an elementary equivalence.
"""

from dataclasses import dataclass

import numpy as np

from . import _arith
from .errors import DimensionMismatch, InvalidPartition, NotAmalgamable, ZeroRowOrColumn
from .graph_core import DirectedMultigraph, Edge, TransitionMatrix, from_matrix, is_essential, to_matrix


@dataclass(frozen=True)
class _Partition:
    # blocks[v] is a tuple of blocks, each a sorted tuple of edge ids
    blocks: tuple
    # permutation[v][n] = position of canonical block n in the caller's order
    permutation: tuple = ()

    def m(self, v):
        return len(self.blocks[v])

    def block_of(self):
        """Map edge id -> (vertex, 0-based block index)."""
        where = {}
        for v, vblocks in enumerate(self.blocks):
            for n, block in enumerate(vblocks):
                for e in block:
                    where[e] = (v, n)
        return where


class OutPartition(_Partition):
    """Partition of each vertex's outgoing edges."""


class InPartition(_Partition):
    """Partition of each vertex's incoming edges."""


def _make_partition(cls, G, blocks_by_vertex, incident):
    n = G.n_vertices
    if isinstance(blocks_by_vertex, dict):
        blocks_by_vertex = [blocks_by_vertex.get(v) for v in range(n)]
    blocks_by_vertex = list(blocks_by_vertex)
    if len(blocks_by_vertex) != n:
        raise InvalidPartition(f"expected blocks for {n} vertices, got {len(blocks_by_vertex)}")
    normalized, perms = [], []
    for v, vblocks in enumerate(blocks_by_vertex):
        own = sorted(e.id for e in incident(v))
        if vblocks is None:
            vblocks = [own] if own else []
        vblocks = [tuple(sorted(_edge_id(G, e) for e in block)) for block in vblocks]
        if any(len(b) == 0 for b in vblocks):
            raise InvalidPartition(f"vertex {v + 1} has an empty block")
        flat = [e for b in vblocks for e in b]
        if len(flat) != len(set(flat)):
            raise InvalidPartition(f"blocks of vertex {v + 1} overlap")
        if sorted(flat) != own:
            raise InvalidPartition(f"blocks of vertex {v + 1} do not cover its edge set exactly")
        if not vblocks:
            raise InvalidPartition(f"vertex {v + 1} has no edges to partition")
        order = sorted(range(len(vblocks)), key=lambda i: vblocks[i][0])
        normalized.append(tuple(vblocks[i] for i in order))
        perms.append(tuple(order))
    return cls(tuple(normalized), tuple(perms))


def _edge_id(G, e):
    if isinstance(e, Edge):
        return e.id
    if isinstance(e, str):
        return G.edge_by_label(e).id
    return int(e)


def out_partition(G, blocks_by_vertex):
    """Build an :class:`OutPartition` from per-vertex blocks.

    ``blocks_by_vertex`` is a list (or dict keyed by 0-based vertex) whose
    entries are iterables of blocks; edges may be given as ids, :class:`Edge`
    records or ``"i->j#k"`` labels.  Missing vertices get one block.
    """
    return _make_partition(OutPartition, G, blocks_by_vertex, G.out_edges)


def in_partition(G, blocks_by_vertex):
    return _make_partition(InPartition, G, blocks_by_vertex, G.in_edges)


def trivial_out_partition(G):
    return out_partition(G, {})


def trivial_in_partition(G):
    return in_partition(G, {})


@dataclass(frozen=True)
class SplitResult:
    kind: str  # "out" or "in"
    original: TransitionMatrix
    partition: _Partition
    graph: DirectedMultigraph
    split_matrix: TransitionMatrix
    C: np.ndarray
    D: np.ndarray
    Z_hat: TransitionMatrix
    vertex_map: tuple  # new vertex -> (old vertex, 0-based block index)
    edge_map: tuple  # new edge id -> (old edge id, 1-based copy superscript)

    def check(self):
        """Re-verify the factorization invariants; returns True or raises AssertionError."""
        assert np.array_equal(_arith.matmul(self.C, self.D), self.original.data)
        assert np.array_equal(_arith.matmul(self.D, self.C), self.split_matrix.data)
        n, m = self.original.dim, self.split_matrix.dim
        z = np.asarray(self.Z_hat)
        assert np.array_equal(z[:n, n:], self.C) and np.array_equal(z[n:, :n], self.D)
        assert not z[:n, :n].any() and not z[n:, n:].any()
        expected = {(v, b) for v in range(n) for b in range(self.partition.m(v))}
        assert len(self.vertex_map) == m and set(self.vertex_map) == expected
        return True


def bipartite(C, D):
    """The block matrix ``[[0, C], [D, 0]]``."""
    C = np.asarray(C)
    D = np.asarray(D)
    n, m = C.shape
    if D.shape != (m, n):
        raise DimensionMismatch(f"C is {C.shape} but D is {D.shape}")
    Z = np.zeros((n + m, n + m), dtype=object)
    Z[:n, n:] = C
    Z[n:, :n] = D
    return TransitionMatrix(_arith.narrow(Z))


def _split_vertices(G, partition, sep):
    vertex_map = []
    labels = []
    index = {}
    for v in range(G.n_vertices):
        for b in range(partition.m(v)):
            index[v, b] = len(vertex_map)
            vertex_map.append((v, b))
            labels.append(f"{G.vertices[v]}{sep}{b + 1}")
    return vertex_map, labels, index


def _assemble(G, labels, new_edges):
    """Canonically order raw (src, tgt, old_edge, superscript) tuples into a graph."""
    new_edges.sort(key=lambda t: (t[0], t[1], t[2], t[3]))
    edges, edge_map, copies = [], [], {}
    for src, tgt, old, sup in new_edges:
        k = copies.get((src, tgt), 0) + 1
        copies[src, tgt] = k
        edges.append(Edge(len(edges), src, tgt, k))
        edge_map.append((old, sup))
    return DirectedMultigraph(tuple(labels), tuple(edges)), tuple(edge_map)


def out_split(G, P):
    """Out-split graph of ``G`` using the out-partition ``P``.

    Each edge e in block i of its source I with target J becomes edges
    e^1..e^m(J) from I^i to J^j.
    """
    if isinstance(G, TransitionMatrix) or not isinstance(G, DirectedMultigraph):
        G = from_matrix(G)
    if not isinstance(P, OutPartition):
        P = out_partition(G, P)
    A = to_matrix(G)
    vertex_map, labels, index = _split_vertices(G, P, "^")
    where = P.block_of()
    raw = []
    for e in G.edges:
        _, i = where[e.id]
        for j in range(P.m(e.target)):
            raw.append((index[e.source, i], index[e.target, j], e.id, j + 1))
    graph, edge_map = _assemble(G, labels, raw)
    n, m = A.dim, len(vertex_map)
    C = np.zeros((n, m), dtype=np.int64)
    D = np.zeros((m, n), dtype=np.int64)
    for new, (v, b) in enumerate(vertex_map):
        C[v, new] = 1
    for e in G.edges:
        _, i = where[e.id]
        D[index[e.source, i], e.target] += 1
    return _finish("out", A, P, graph, C, D, vertex_map, edge_map)


def in_split(G, P):
    """In-split graph of ``G`` using the in-partition ``P``.

    Each edge e in block j of its target J with source I becomes edges
    e_1..e_m(I) from I_i to J_j.  The companions are ``C[I, J_n] =`` number
    of edges from I in block n of J and ``D[J_n, K] = [J == K]``, so that
    ``C @ D == A`` and ``D @ C == split_matrix``.
    """
    if isinstance(G, TransitionMatrix) or not isinstance(G, DirectedMultigraph):
        G = from_matrix(G)
    if not isinstance(P, InPartition):
        P = in_partition(G, P)
    A = to_matrix(G)
    vertex_map, labels, index = _split_vertices(G, P, "_")
    where = P.block_of()
    raw = []
    for e in G.edges:
        _, j = where[e.id]
        for i in range(P.m(e.source)):
            raw.append((index[e.source, i], index[e.target, j], e.id, i + 1))
    graph, edge_map = _assemble(G, labels, raw)
    n, m = A.dim, len(vertex_map)
    C = np.zeros((n, m), dtype=np.int64)
    D = np.zeros((m, n), dtype=np.int64)
    for new, (v, b) in enumerate(vertex_map):
        D[new, v] = 1
    for e in G.edges:
        _, j = where[e.id]
        C[e.source, index[e.target, j]] += 1
    return _finish("in", A, P, graph, C, D, vertex_map, edge_map)


def _finish(kind, A, P, graph, C, D, vertex_map, edge_map):
    for arr in (C, D):
        arr.setflags(write=False)
    result = SplitResult(
        kind=kind,
        original=A,
        partition=P,
        graph=graph,
        split_matrix=to_matrix(graph),
        C=C,
        D=D,
        Z_hat=bipartite(C, D),
        vertex_map=tuple(vertex_map),
        edge_map=edge_map,
    )
    result.check()
    return result


def find_out_amalgamations(A):
    """Maximal vertex sets (0-based, size >= 2) whose columns in ``A`` coincide.

    Returned in increasing lexicographic order.
    """
    A = TransitionMatrix.coerce(A)
    if not is_essential(A):
        raise ZeroRowOrColumn("amalgamation search needs an essential matrix")
    groups = {}
    for j in range(A.dim):
        groups.setdefault(tuple(int(x) for x in A[:, j]), []).append(j)
    return sorted(tuple(g) for g in groups.values() if len(g) > 1)


@dataclass(frozen=True)
class Amalgamation:
    """An out-amalgamation of ``source`` together with its round-trip witness.

    ``split`` is the out-split of ``graph`` by ``partition``; ``permutation``
    lists, for each vertex of ``source``, the vertex of ``split.graph`` it
    corresponds to, so ``split_matrix[perm][:, perm] == source``.
    """

    source: TransitionMatrix
    graph: DirectedMultigraph
    partition: OutPartition
    classes: tuple  # merged vertex -> tuple of source vertices
    permutation: tuple
    split: SplitResult

    @property
    def matrix(self):
        return to_matrix(self.graph)


def out_amalgamate(G, merge_sets):
    """Merge vertex sets with identical in-edge columns into single vertices.

    ``merge_sets`` is one set of 0-based vertices or a collection of disjoint
    sets.  The merged vertex inherits the union of the members' out-edges;
    each member's out-edges form one block of the returned partition.
    """
    if not isinstance(G, DirectedMultigraph):
        G = from_matrix(G)
    A = to_matrix(G)
    if not is_essential(A):
        raise ZeroRowOrColumn("amalgamation needs an essential matrix")
    merge_sets = list(merge_sets)
    if merge_sets and not isinstance(merge_sets[0], (set, frozenset, tuple, list)):
        merge_sets = [merge_sets]
    n = A.dim
    cls_of = list(range(n))
    seen = set()
    for s in merge_sets:
        s = sorted(int(v) for v in s)
        if not s:
            continue
        if any(v < 0 or v >= n for v in s) or seen & set(s):
            raise NotAmalgamable(f"bad or overlapping merge set {[v + 1 for v in s]}")
        seen |= set(s)
        col = A[:, s[0]]
        for v in s[1:]:
            if not np.array_equal(A[:, v], col):
                raise NotAmalgamable(f"vertices {s[0] + 1} and {v + 1} have different in-edges")
            cls_of[v] = s[0]
    reps = sorted(set(cls_of))
    classes = tuple(tuple(v for v in range(n) if cls_of[v] == r) for r in reps)
    k = len(classes)
    labels = tuple(
        G.vertices[c[0]] if len(c) == 1 else "{" + ",".join(G.vertices[v] for v in c) + "}" for c in classes
    )
    # edges of the merged graph, grouped by (class, class), copies in member order
    raw = []
    for X, members in enumerate(classes):
        for Y, targets in enumerate(classes):
            y0 = targets[0]
            for x in members:
                raw.extend((X, Y, x) for _ in range(int(A[x, y0])))
    edges, member_of_edge, copies = [], [], {}
    for X, Y, x in raw:
        c = copies.get((X, Y), 0) + 1
        copies[X, Y] = c
        edges.append(Edge(len(edges), X, Y, c))
        member_of_edge.append(x)
    merged = DirectedMultigraph(labels, tuple(edges))
    blocks = []
    for X, members in enumerate(classes):
        blocks.append([[e.id for e in edges if e.source == X and member_of_edge[e.id] == x] for x in members])
    P = out_partition(merged, blocks)
    split = out_split(merged, P)
    # canonical block n of class X came from member members[perm[n]]
    new_index = {vb: i for i, vb in enumerate(split.vertex_map)}
    permutation = [None] * n
    for X, members in enumerate(classes):
        for nb, orig_pos in enumerate(P.permutation[X]):
            permutation[members[orig_pos]] = new_index[X, nb]
    perm = np.array(permutation, dtype=np.int64)
    S = np.asarray(split.split_matrix)
    if not np.array_equal(S[np.ix_(perm, perm)], A.data):
        raise AssertionError("out-amalgamation round trip failed")
    return Amalgamation(A, merged, P, classes, tuple(permutation), split)


def transposed_edge_ids(G):
    """Map edge id of G -> id of the reversed edge in the canonical transpose of G."""
    Gt = G.transpose()
    index = {(e.source, e.target, e.copy): e.id for e in Gt.edges}
    return [index[e.target, e.source, e.copy] for e in G.edges]


def in_partition_as_out(G, P):
    """The in-partition P of G, read as an out-partition of the transposed graph."""
    ids = transposed_edge_ids(G)
    Gt = G.transpose()
    return Gt, out_partition(Gt, [[[ids[e] for e in block] for block in vb] for vb in P.blocks])
