"""Elementary equivalences, strong shift equivalence chains and edge pairings."""

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _arith
from .errors import (
    BranchOutOfRange,
    DimensionMismatch,
    EmptyChain,
    MalformedInput,
    SearchSpaceTooLarge,
    UnpairedPath,
    Verdict,
)
from .graph_core import Edge, TransitionMatrix, from_matrix, is_irreducible, is_permutation

DEFAULT_MAX_CANDIDATES = 10**8


def _nonneg(M, name):
    arr = _arith.as_int_array(M)
    if arr.size and min(int(v) for v in arr.flat) < 0:
        raise MalformedInput(f"{name} has a negative entry")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ElementaryEquivalence:
    """A claimed witness ``A = C D``, ``B = D C``.

    Construction does not check the products; use :func:`verify_elementary`
    or build from the witness alone with :meth:`from_witness`.
    """

    A: TransitionMatrix
    B: TransitionMatrix
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", TransitionMatrix.coerce(self.A))
        object.__setattr__(self, "B", TransitionMatrix.coerce(self.B))
        object.__setattr__(self, "C", _nonneg(self.C, "C"))
        object.__setattr__(self, "D", _nonneg(self.D, "D"))

    @classmethod
    def from_witness(cls, C, D):
        C = _nonneg(C, "C")
        D = _nonneg(D, "D")
        if C.shape[1] != D.shape[0] or D.shape[1] != C.shape[0]:
            raise DimensionMismatch(f"C is {C.shape} but D is {D.shape}")
        return cls(_arith.matmul(C, D), _arith.matmul(D, C), C, D)

    @classmethod
    def from_split(cls, split):
        return cls(split.original, split.split_matrix, split.C, split.D)

    def reversed(self):
        """The same witness read from B to A."""
        return ElementaryEquivalence(self.B, self.A, self.D, self.C)

    def __eq__(self, other):
        if not isinstance(other, ElementaryEquivalence):
            return NotImplemented
        return (
            self.A == other.A
            and self.B == other.B
            and np.array_equal(self.C, other.C)
            and np.array_equal(self.D, other.D)
        )

    def __repr__(self):
        return f"ElementaryEquivalence(C={_arith.to_lists(self.C)}, D={_arith.to_lists(self.D)})"


@dataclass(frozen=True)
class SSEChain:
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise EmptyChain("a chain needs at least one step")

    @property
    def A(self):
        return self.steps[0].A

    @property
    def B(self):
        return self.steps[-1].B

    @property
    def matrices(self):
        return [self.steps[0].A] + [s.B for s in self.steps]

    def __len__(self):
        return len(self.steps)


def _first_mismatch(X, Y):
    for i, j in itertools.product(range(X.shape[0]), range(X.shape[1])):
        if X[i, j] != Y[i, j]:
            return i, j
    return None


def verify_elementary(A, B=None, C=None, D=None):
    """Check ``A == C D`` and ``B == D C`` exactly.

    Accepts either an :class:`ElementaryEquivalence` or the four matrices.
    Reducible or permutation endpoints produce warnings, not refutations.
    """
    if isinstance(A, ElementaryEquivalence):
        ee = A
    else:
        ee = ElementaryEquivalence(A, B, C, D)
    n, m = ee.A.dim, ee.B.dim
    if ee.C.shape != (n, m) or ee.D.shape != (m, n):
        raise DimensionMismatch(f"A is {n}x{n}, B is {m}x{m}, C is {ee.C.shape}, D is {ee.D.shape}")
    warnings = []
    for name, M in (("A", ee.A), ("B", ee.B)):
        if not is_irreducible(M):
            warnings.append(f"{name} is reducible")
        if is_permutation(M):
            warnings.append(f"{name} is a permutation matrix")
    for name, target, product in (("CD", ee.A, _arith.matmul(ee.C, ee.D)), ("DC", ee.B, _arith.matmul(ee.D, ee.C))):
        bad = _first_mismatch(product, target.data)
        if bad is not None:
            i, j = bad
            return Verdict.refuted(
                f"entry ({i + 1},{j + 1}) of {name}",
                f"{name}[{i + 1},{j + 1}] = {product[i, j]} but expected {target[i, j]}",
                warnings,
            )
    return Verdict.verified("A = CD, B = DC", warnings)


def verify_chain(chain):
    if not isinstance(chain, SSEChain):
        chain = SSEChain(tuple(chain))
    warnings = []
    for idx, step in enumerate(chain.steps, start=1):
        if idx > 1 and not (chain.steps[idx - 2].B == step.A):
            return Verdict.refuted(f"step {idx}", "step source does not match previous step target")
        v = verify_elementary(step)
        warnings.extend(f"step {idx}: {w}" for w in v.warnings)
        if not v:
            return Verdict.refuted(f"step {idx}", f"{v.locus}: {v.detail}", warnings)
    return Verdict.verified(f"{len(chain.steps)} step(s)", warnings)


def chain_from_witnesses(witnesses):
    """Build a chain from ``(C_i, D_i)`` pairs; endpoints come from the products."""
    return SSEChain(tuple(ElementaryEquivalence.from_witness(C, D) for C, D in witnesses))


def chain_forward_matrix(chain):
    """The product ``C_1 C_2 ... C_n``."""
    product = chain.steps[0].C
    for step in chain.steps[1:]:
        product = _arith.matmul(product, step.C)
    return product


def chain_backward_matrix(chain):
    """The product ``D_n ... D_2 D_1``."""
    product = chain.steps[-1].D
    for step in reversed(chain.steps[:-1]):
        product = _arith.matmul(product, step.D)
    return product


def rectangular_edges(M):
    """Canonical edge list of a rectangular nonnegative matrix (row vertex -> column vertex)."""
    M = np.asarray(M)
    edges = []
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            for k in range(int(M[i, j])):
                edges.append(Edge(len(edges), i, j, k + 1))
    return tuple(edges)


@dataclass(frozen=True)
class EdgePairing:
    """Length-two path decomposition of the A- and B-edges of an equivalence.

    ``a_pairs[i] = (c, d)`` gives the C-edge and D-edge ids whose concatenation
    is A-edge i; ``b_pairs[l] = (d, c)`` does the same for B-edge l.
    """

    C_edges: tuple
    D_edges: tuple
    A_edges: tuple
    B_edges: tuple
    a_pairs: tuple
    b_pairs: tuple

    def a_edge_of(self):
        return {p: i for i, p in enumerate(self.a_pairs)}

    def b_edge_of(self):
        return {p: i for i, p in enumerate(self.b_pairs)}


def _pair(first, second, target_edges):
    by_source = {}
    for e in second:
        by_source.setdefault(e.source, []).append(e)
    paths = {}
    for e in first:
        for f in by_source.get(e.target, ()):
            paths.setdefault((e.source, f.target), []).append((e.id, f.id))
    pairs = []
    for t in target_edges:
        options = paths.get((t.source, t.target), [])
        if t.copy > len(options):
            raise UnpairedPath(f"edge {t.label} has no matching length-two path")
        pairs.append(options[t.copy - 1])
    used = Counter((t.source, t.target) for t in target_edges)
    for (i, j), options in paths.items():
        if used[i, j] != len(options):
            raise UnpairedPath(f"{len(options)} paths from {i + 1} to {j + 1} but {used[i, j]} edges")
    return tuple(pairs)


def edge_pairing(ee):
    """Identify each A-edge with a C-then-D path and each B-edge with a D-then-C path.

    Parallel paths are matched to edge copies in lexicographic path order.
    """
    EC = rectangular_edges(ee.C)
    ED = rectangular_edges(ee.D)
    EA = from_matrix(ee.A).edges
    EB = from_matrix(ee.B).edges
    a_pairs = _pair(EC, ED, EA)
    b_pairs = _pair(ED, EC, EB)
    return EdgePairing(EC, ED, EA, EB, a_pairs, b_pairs)


def dhat(ee, pairing=None):
    """0/1 matrix with entry (i, l) = 1 iff A-edge i and B-edge l share their D-edge."""
    p = pairing or edge_pairing(ee)
    out = np.zeros((len(p.a_pairs), len(p.b_pairs)), dtype=np.int64)
    for i, (_, d) in enumerate(p.a_pairs):
        for l, (d2, _) in enumerate(p.b_pairs):
            if d == d2:
                out[i, l] = 1
    out.setflags(write=False)
    return out


def _solutions(C, target_col, bound):
    """All nonnegative vectors x with entries <= bound and C x == target_col."""
    m = C.shape[1]
    for x in itertools.product(range(bound + 1), repeat=m):
        if all(sum(int(C[i, j]) * x[j] for j in range(m)) == int(target_col[i]) for i in range(C.shape[0])):
            yield x


def search_elementary(A, B, entry_bound, max_candidates=DEFAULT_MAX_CANDIDATES):
    """Every witness ``(C, D)`` with entries in ``0..entry_bound``, CD = A and DC = B.

    Results are in lexicographic order of (C flattened, D flattened).  The raw
    candidate count ``(entry_bound + 1) ** (2 N M)`` is capped rather than
    truncated.
    """
    A = TransitionMatrix.coerce(A)
    B = TransitionMatrix.coerce(B)
    if entry_bound < 0:
        raise ValueError("entry_bound must be >= 0")
    n, m = A.dim, B.dim
    raw = (entry_bound + 1) ** (2 * n * m)
    if raw > max_candidates:
        raise SearchSpaceTooLarge(f"{raw} candidates exceed the cap of {max_candidates}")
    # trace(CD) = trace(DC) for every witness
    if n and m and int(np.trace(A.data.astype(object))) != int(np.trace(B.data.astype(object))):
        return []
    found = []
    for cflat in itertools.product(range(entry_bound + 1), repeat=n * m):
        C = np.array(cflat, dtype=np.int64).reshape(n, m)
        columns = [list(_solutions(C, A[:, k], entry_bound)) for k in range(n)]
        if any(not col for col in columns):
            continue
        for cols in itertools.product(*columns):
            D = np.array(cols, dtype=np.int64).T.reshape(m, n)
            if np.array_equal(_arith.matmul(D, C), B.data):
                found.append(ElementaryEquivalence(A, B, C, D))
    found.sort(key=lambda e: (tuple(e.C.flat), tuple(e.D.flat)))
    return found


class CuntzFamily:
    """k injections of the positive integers, branch i sending j to k(j-1)+i.

    Their images partition the positive integers; this is the index-level
    content of a family of isometries whose range projections sum to one.
    """

    def __init__(self, k):
        if k < 1:
            raise ValueError("branching degree must be >= 1")
        self.k = k

    def apply(self, i, j):
        if not 1 <= i <= self.k:
            raise BranchOutOfRange(f"branch {i} not in 1..{self.k}")
        if j < 1:
            raise ValueError("indices start at 1")
        return self.k * (j - 1) + i

    def inverse(self, n):
        """The unique (branch, index) whose image is n."""
        return (n - 1) % self.k + 1, (n - 1) // self.k + 1

    def image(self, i, limit):
        """Image of branch i intersected with 1..limit."""
        return list(range(self.apply(i, 1), limit + 1, self.k))

    def __repr__(self):
        return f"CuntzFamily(k={self.k})"


def cuntz_family(k):
    return CuntzFamily(k)


def verify_partition(family, prefix_len):
    """Check the branch images hit every n in 1..prefix_len exactly once."""
    hits = [0] * (prefix_len + 1)
    for i in range(1, family.k + 1):
        j = 1
        while (n := family.apply(i, j)) <= prefix_len:
            hits[n] += 1
            j += 1
    for n in range(1, prefix_len + 1):
        if hits[n] != 1:
            return Verdict.refuted(f"index {n}", f"hit {hits[n]} times")
    return Verdict.verified(f"k={family.k} partitions 1..{prefix_len}")
