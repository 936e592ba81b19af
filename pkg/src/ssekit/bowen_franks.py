"""Bowen-Franks groups ``Z^N / (I - A^t) Z^N`` and maps between them.

A group is stored through the Smith form ``U L V = diag(d)`` of its relation
matrix L; the class of x has canonical coordinates ``U x`` with the
coordinates for ``d_i = 1`` dropped, the ``d_i > 1`` ones reduced mod d_i and
the ``d_i = 0`` ones kept as free coordinates.

Maps are represented by integer matrices acting on column vectors, which are
only meaningful modulo the target relations: equality of maps is therefore
always decided on reduced generator images.
"""

from dataclasses import dataclass

import numpy as np

from . import _arith
from .errors import DimensionMismatch, NotWellDefined, Verdict
from .graph_core import TransitionMatrix, edge_graph
from .snf import SmithForm, smith_normal_form


@dataclass(frozen=True)
class CokernelElement:
    free: tuple
    torsion: tuple

    @property
    def is_zero(self):
        return not any(self.free) and not any(self.torsion)

    def __str__(self):
        return str(self.free + self.torsion)


@dataclass(frozen=True)
class FinAbGroup:
    """Cokernel of an integer relation matrix, in Smith coordinates."""

    relations: tuple  # the relation matrix L, rows of Python ints
    smith: SmithForm

    @property
    def dim(self):
        return len(self.relations)

    def _diag(self):
        d = list(self.smith.divisors)
        return d + [0] * (self.dim - len(d))

    @property
    def free_rank(self):
        return sum(1 for d in self._diag() if d == 0)

    @property
    def torsion(self):
        return tuple(d for d in self._diag() if d > 1)

    @property
    def invariants(self):
        return (self.free_rank, self.torsion)

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def reduce(self, x):
        """Canonical coordinates of the class of the integer vector ``x``."""
        x = [int(v) for v in x]
        if len(x) != self.dim:
            raise DimensionMismatch(f"vector of length {len(x)} in a group on Z^{self.dim}")
        y = [sum(u * v for u, v in zip(row, x)) for row in self.smith.U]
        free, tors = [], []
        for yi, d in zip(y, self._diag()):
            if d == 0:
                free.append(yi)
            elif d > 1:
                tors.append(yi % d)
        return CokernelElement(tuple(free), tuple(tors))

    def is_zero(self, x):
        return self.reduce(x).is_zero

    def isomorphic(self, other):
        return self.invariants == other.invariants

    def __str__(self):
        if self.is_trivial:
            return "trivial group"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts)


def cokernel(L):
    """The group ``Z^rows / L Z^cols``."""
    arr = np.asarray(L, dtype=object)
    rel = tuple(tuple(int(v) for v in row) for row in arr)
    return FinAbGroup(rel, smith_normal_form(arr))


def relation_matrix(A):
    """``I - A^t`` as an exact array."""
    A = TransitionMatrix.coerce(A)
    return _arith.sub(np.eye(A.dim, dtype=np.int64), A.data.T)


def bowen_franks_group(A):
    return cokernel(relation_matrix(A))


def unit_class(A):
    """Class of the all-ones vector."""
    A = TransitionMatrix.coerce(A)
    return bowen_franks_group(A).reduce([1] * A.dim)


def solve_integer(L, R):
    """Some integer W with ``L @ W == R``, or None when there is none."""
    L = np.asarray(L, dtype=object)
    R = np.asarray(R, dtype=object)
    sf = smith_normal_form(L)
    m, n = sf.shape
    if R.shape[0] != m:
        raise DimensionMismatch(f"L has {m} rows but R has {R.shape[0]}")
    U = np.array(sf.U, dtype=object).reshape(m, m)
    V = np.array(sf.V, dtype=object).reshape(n, n)
    UR = U.dot(R) if m else np.zeros((0, R.shape[1]), dtype=object)
    Y = np.zeros((n, R.shape[1]), dtype=object)
    for i in range(m):
        d = sf.divisors[i] if i < len(sf.divisors) else 0
        for k in range(R.shape[1]):
            v = int(UR[i, k])
            if d == 0:
                if v != 0:
                    return None
            elif v % d:
                return None
            else:
                Y[i, k] = v // d
    W = V.dot(Y) if n else Y
    assert np.array_equal(L.dot(W) if n else np.zeros_like(R), R)
    return W


@dataclass(frozen=True)
class CokernelMap:
    """Homomorphism ``coker(I - A^t) -> coker(I - B^t)`` induced by ``matrix``.

    ``certificate`` is an integer W with ``matrix (I - A^t) == (I - B^t) W``.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: np.ndarray
    certificate: np.ndarray

    def __call__(self, x):
        y = np.asarray(self.matrix, dtype=object).dot(np.array([int(v) for v in x], dtype=object))
        return self.target.reduce(list(y))

    def generator_images(self):
        return [self(e) for e in np.eye(self.source.dim, dtype=np.int64)]


def _map_between(M, src, tgt):
    M = np.asarray(M, dtype=object)
    if M.ndim != 2 or M.shape != (tgt.dim, src.dim):
        raise DimensionMismatch(f"map matrix has shape {M.shape}, need {(tgt.dim, src.dim)}")
    Ls = np.array(src.relations, dtype=object).reshape(src.dim, src.dim)
    Lt = np.array(tgt.relations, dtype=object).reshape(tgt.dim, tgt.dim)
    rhs = M.dot(Ls) if src.dim else np.zeros((tgt.dim, 0), dtype=object)
    W = solve_integer(Lt, rhs)
    if W is None:
        raise NotWellDefined("no integer W with M (I - A^t) = (I - B^t) W")
    return CokernelMap(src, tgt, _arith.narrow(M), W)


def induced_map(M, A, B):
    """The map ``coker(I - A^t) -> coker(I - B^t)`` induced by the matrix M."""
    return _map_between(M, bowen_franks_group(A), bowen_franks_group(B))


def identity_map(A):
    A = TransitionMatrix.coerce(A)
    return induced_map(np.eye(A.dim, dtype=np.int64), A, A)


def compose(f, g):
    """``f ∘ g`` (apply g first)."""
    if g.target.relations != f.source.relations:
        raise DimensionMismatch("maps are not composable")
    M = _arith.matmul(np.asarray(f.matrix), np.asarray(g.matrix))
    W = np.asarray(f.certificate, dtype=object).dot(np.asarray(g.certificate, dtype=object))
    return CokernelMap(g.source, f.target, M, W)


def equal_maps(f, g):
    """Agreement on every standard generator after reduction in the target."""
    if f.source.relations != g.source.relations or f.target.relations != g.target.relations:
        raise DimensionMismatch("maps have different sources or targets")
    return f.generator_images() == g.generator_images()


def _is_identity(f):
    return all(f(e) == f.target.reduce(e) for e in np.eye(f.source.dim, dtype=np.int64))


def is_isomorphism(f, inverse):
    """Verify ``inverse ∘ f`` and ``f ∘ inverse`` are identities on generators."""
    if not _is_identity(compose(inverse, f)):
        return Verdict.refuted("inverse∘f", "inverse∘f is not the identity on generators")
    if not _is_identity(compose(f, inverse)):
        return Verdict.refuted("f∘inverse", "f∘inverse is not the identity on generators")
    return Verdict.verified("isomorphism")


def check_edge_identities(ee):
    """Check the two cokernel identities relating an elementary equivalence to its edge graphs.

    (i)  S_B^t ∘ D̂^t == C^t ∘ S_A^t  as maps coker(I - (A^G)^t) -> coker(I - B^t)
    (ii) S_A^t sends the class of (1,...,1) to the class of (1,...,1)
    """
    from .sse import dhat

    A, B = ee.A, ee.B
    fa, fb = edge_graph(A), edge_graph(B)
    Dh = dhat(ee)
    left = compose(induced_map(fb.S.T, fb.AG, B), induced_map(Dh.T, fa.AG, fb.AG))
    right = compose(induced_map(np.asarray(ee.C).T, A, B), induced_map(fa.S.T, fa.AG, A))
    if not equal_maps(left, right):
        return Verdict.refuted("(i)", "S_B^t D̂^t and C^t S_A^t differ on a generator")
    sa = induced_map(fa.S.T, fa.AG, A)
    if sa([1] * fa.AG.dim) != unit_class(A):
        return Verdict.refuted("(ii)", "S_A^t does not preserve the unit class")
    return Verdict.verified("(i) and (ii)")


def unit_witness(A, x):
    """Integer w with ``x - 1 == (I - A^t) w`` when x is in the unit class, else None."""
    A = TransitionMatrix.coerce(A)
    diff = np.array([[int(v) - 1] for v in x], dtype=object)
    W = solve_integer(np.asarray(relation_matrix(A), dtype=object), diff)
    return None if W is None else tuple(int(v) for v in W[:, 0])


def check_diagram(chain, require_units=True):
    """Check the cokernel side of the conjugacy diagram along an SSE chain.

    (a) each step's C_i^t induces an isomorphism with inverse induced by D_i^t;
    (b) the composite of the step maps equals the map induced by (C_1...C_n)^t;
    (c) the composite sends the unit class of A_0 to that of A_n.

    Item (c) holds for out-split and out-amalgamation steps but not in
    general (an in-split only yields a stable isomorphism), so it can be
    skipped with ``require_units=False``.
    """
    from .sse import chain_forward_matrix

    steps = chain.steps
    composite = None
    for idx, step in enumerate(steps, start=1):
        try:
            f = induced_map(np.asarray(step.C).T, step.A, step.B)
            g = induced_map(np.asarray(step.D).T, step.B, step.A)
        except (NotWellDefined, DimensionMismatch) as exc:
            return Verdict.refuted(f"step {idx} (a)", str(exc))
        iso = is_isomorphism(f, g)
        if not iso:
            return Verdict.refuted(f"step {idx} (a)", iso.detail)
        composite = f if composite is None else compose(f, composite)
    A0, An = steps[0].A, steps[-1].B
    try:
        direct = induced_map(np.asarray(chain_forward_matrix(chain)).T, A0, An)
    except NotWellDefined as exc:
        return Verdict.refuted("(b)", str(exc))
    if not equal_maps(composite, direct):
        return Verdict.refuted("(b)", "composite differs from the product map")
    if require_units and composite([1] * TransitionMatrix.coerce(A0).dim) != unit_class(An):
        return Verdict.refuted("(c)", "unit classes do not correspond")
    return Verdict.verified("(a), (b)" + (", (c)" if require_units else ""))
