"""Nonnegative integer matrices and their directed multigraphs.

Vertices and edges are indexed from 0 internally; every rendered label is
1-based (``"i->j#k"`` for the k-th copy of an edge from vertex i to vertex j).
"""

from dataclasses import dataclass

import numpy as np

from . import _arith
from .errors import MalformedInput, ZeroRowOrColumn


class TransitionMatrix:
    """A square matrix with nonnegative integer entries.

    Instances are immutable: the wrapped array is marked read-only, and
    equality and hashing go through the entries.
    """

    __slots__ = ("_data",)

    def __init__(self, entries):
        if isinstance(entries, TransitionMatrix):
            data = entries._data
        else:
            data = _arith.as_int_array(entries)
            if data.shape[0] != data.shape[1]:
                raise MalformedInput(f"transition matrix must be square, got {data.shape}")
            if data.size and min(int(v) for v in data.flat) < 0:
                raise MalformedInput("transition matrix entries must be nonnegative")
            data = data.copy()
            data.setflags(write=False)
        self._data = data

    @classmethod
    def coerce(cls, value):
        return value if isinstance(value, cls) else cls(value)

    @property
    def data(self):
        return self._data

    @property
    def dim(self):
        return self._data.shape[0]

    @property
    def T(self):
        return TransitionMatrix(self._data.T)

    def __array__(self, dtype=None, copy=None):
        return self._data if dtype is None else self._data.astype(dtype)

    def __getitem__(self, idx):
        return self._data[idx]

    def __eq__(self, other):
        if isinstance(other, TransitionMatrix):
            other = other._data
        try:
            other = np.asarray(other)
        except Exception:
            return NotImplemented
        return self._data.shape == other.shape and bool(np.all(self._data == other))

    def __hash__(self):
        return hash(tuple(tuple(int(v) for v in row) for row in self._data))

    def tolist(self):
        return _arith.to_lists(self._data)

    def __repr__(self):
        return f"TransitionMatrix({self.tolist()})"


@dataclass(frozen=True)
class Edge:
    id: int
    source: int
    target: int
    copy: int  # 1-based copy index among parallel edges

    @property
    def label(self):
        return f"{self.source + 1}->{self.target + 1}#{self.copy}"


@dataclass(frozen=True)
class DirectedMultigraph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        n = len(self.vertices)
        for pos, e in enumerate(self.edges):
            if e.id != pos or not (0 <= e.source < n and 0 <= e.target < n):
                raise MalformedInput(f"malformed edge record {e}")

    @property
    def n_vertices(self):
        return len(self.vertices)

    def out_edges(self, v):
        return [e for e in self.edges if e.source == v]

    def in_edges(self, v):
        return [e for e in self.edges if e.target == v]

    def edge_by_label(self, label):
        for e in self.edges:
            if e.label == label:
                return e
        raise MalformedInput(f"no edge labelled {label!r}")

    def transpose(self):
        """Reversed graph, re-indexed in canonical order."""
        return from_matrix(to_matrix(self).T, vertices=self.vertices)


def from_matrix(A, vertices=None):
    """Multigraph with ``A[i, j]`` edges from vertex i to vertex j, canonically ordered."""
    A = TransitionMatrix.coerce(A)
    n = A.dim
    if vertices is None:
        vertices = tuple(str(i + 1) for i in range(n))
    elif len(vertices) != n:
        raise MalformedInput("vertex label count does not match matrix size")
    edges = []
    for i in range(n):
        for j in range(n):
            for k in range(int(A[i, j])):
                edges.append(Edge(len(edges), i, j, k + 1))
    return DirectedMultigraph(tuple(vertices), tuple(edges))


def to_matrix(G):
    n = G.n_vertices
    counts = [[0] * n for _ in range(n)]
    for e in G.edges:
        counts[e.source][e.target] += 1
    return TransitionMatrix(np.array(counts, dtype=np.int64).reshape(n, n))


@dataclass(frozen=True)
class EdgeFactorization:
    """``A = R @ S`` and ``AG = S @ R`` where AG is the edge-transition matrix."""

    AG: TransitionMatrix
    R: np.ndarray
    S: np.ndarray


def is_essential(A):
    A = np.asarray(TransitionMatrix.coerce(A))
    return bool(np.all(A.sum(axis=1) > 0) and np.all(A.sum(axis=0) > 0))


def edge_graph(A):
    """Edge-transition matrix of ``A`` with its source/target factorization.

    ``R[v, e] = 1`` iff edge e starts at v, ``S[e, v] = 1`` iff it ends at v.
    Rejects matrices with a zero row or column rather than pruning them.
    """
    A = TransitionMatrix.coerce(A)
    if not is_essential(A):
        raise ZeroRowOrColumn("every vertex needs an outgoing and an incoming edge")
    G = from_matrix(A)
    m = len(G.edges)
    R = np.zeros((A.dim, m), dtype=np.int64)
    S = np.zeros((m, A.dim), dtype=np.int64)
    for e in G.edges:
        R[e.source, e.id] = 1
        S[e.id, e.target] = 1
    AG = _arith.matmul(S, R)
    assert np.array_equal(_arith.matmul(R, S), A.data)
    for arr in (R, S):
        arr.setflags(write=False)
    return EdgeFactorization(TransitionMatrix(AG), R, S)


def transpose(A):
    return TransitionMatrix.coerce(A).T


def reachability(A):
    """Boolean transitive closure (paths of length >= 1)."""
    a = np.asarray(TransitionMatrix.coerce(A)) > 0
    reach = a.copy()
    n = a.shape[0]
    for k in range(n):
        reach = reach | (reach[:, [k]] & reach[[k], :])
    return reach


def is_irreducible(A):
    A = TransitionMatrix.coerce(A)
    if A.dim == 0:
        return False
    reach = reachability(A)
    return bool(np.all(reach))


def is_permutation(A):
    a = np.asarray(TransitionMatrix.coerce(A))
    return bool(np.all((a == 0) | (a == 1)) and np.all(a.sum(axis=0) == 1) and np.all(a.sum(axis=1) == 1))


def trace_sequence(A, n_max):
    """``[trace(A), trace(A^2), ..., trace(A^n_max)]`` computed exactly."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    A = TransitionMatrix.coerce(A)
    power = A.data
    out = []
    for n in range(1, n_max + 1):
        if n > 1:
            power = _arith.matmul(power, A.data)
        out.append(int(sum(int(power[i, i]) for i in range(A.dim))))
    return out
