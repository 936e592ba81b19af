"""Certificates for chains of splitting moves taken on a matrix or on its transpose.

A step is an out-split or out-amalgamation, performed either directly or on
the transposed matrices.  An in-split of G is an out-split of the transposed
graph, so the four splitting/amalgamation moves reduce to two move kinds on
two sides.  Only splitting-induced steps are admitted; other isomorphisms of
the associated algebra triplets cannot be certified here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptyChain, SideMismatch, Verdict
from .graph_core import TransitionMatrix, from_matrix
from .splitting import SplitResult, in_partition_as_out, out_split
from .sse import ElementaryEquivalence, SSEChain, verify_elementary

DIRECT = "direct"
TRANSPOSED = "transposed"
OUT_SPLIT = "out_split"
OUT_AMALGAMATE = "out_amalgamate"

ADMISSIBILITY_NOTE = "only splitting-induced steps are admitted as certificates"


@dataclass(frozen=True)
class TFStep:
    """One move; ``witness`` is an out-split carried out on the stated side.

    For ``out_split`` the witness splits ``from_matrix`` (or its transpose)
    into ``to_matrix`` (or its transpose); ``out_amalgamate`` stores the
    split of its inverse, going from ``to_matrix`` to ``from_matrix``.
    """

    from_matrix: TransitionMatrix
    to_matrix: TransitionMatrix
    side: str
    move: str
    witness: SplitResult

    def check(self):
        if self.side not in (DIRECT, TRANSPOSED) or self.move not in (OUT_SPLIT, OUT_AMALGAMATE):
            return Verdict.refuted("step kind", f"unknown side/move {self.side}/{self.move}")
        if self.witness.kind != "out":
            return Verdict.refuted("witness", "witness must be an out-split on the stated side")
        src, dst = self.from_matrix, self.to_matrix
        if self.side == TRANSPOSED:
            src, dst = src.T, dst.T
        if self.move == OUT_AMALGAMATE:
            src, dst = dst, src
        try:
            self.witness.check()
        except AssertionError:
            return Verdict.refuted("witness", "split witness does not factor")
        if not (self.witness.original == src):
            return Verdict.refuted("from_matrix", "witness does not start at the stated matrix")
        if not (self.witness.split_matrix == dst):
            return Verdict.refuted("to_matrix", "witness does not end at the stated matrix")
        return Verdict.verified(f"{self.side} {self.move}")

    def elementary_equivalence(self):
        """The elementary equivalence from ``from_matrix`` to ``to_matrix`` implied by the witness."""
        C, D = self.witness.C, self.witness.D
        if self.side == DIRECT:
            pair = (C, D) if self.move == OUT_SPLIT else (D, C)
        else:
            pair = (D.T, C.T) if self.move == OUT_SPLIT else (C.T, D.T)
        return ElementaryEquivalence(self.from_matrix, self.to_matrix, np.ascontiguousarray(pair[0]), np.ascontiguousarray(pair[1]))


def make_step(witness, side, move):
    """Build and verify a step from an out-split witness on the given side."""
    A, S = witness.original, witness.split_matrix
    if side == TRANSPOSED:
        A, S = A.T, S.T
    src, dst = (A, S) if move == OUT_SPLIT else (S, A)
    step = TFStep(TransitionMatrix(src), TransitionMatrix(dst), side, move, witness)
    verdict = step.check()
    if not verdict:
        raise SideMismatch(str(verdict))
    return step


def step_from_split(sr, side=None):
    """Certify a splitting as a forward step.

    Out-splits certify ``direct`` steps.  In-splits certify ``transposed``
    steps, re-expressed as an out-split of the transposed graph.
    """
    expected = DIRECT if sr.kind == "out" else TRANSPOSED
    side = side or expected
    if side != expected:
        raise SideMismatch(f"an {sr.kind}-split certifies a {expected} step, not {side}")
    if sr.kind == "out":
        return make_step(sr, DIRECT, OUT_SPLIT)
    Gt, P = in_partition_as_out(from_matrix(sr.original), sr.partition)
    return make_step(out_split(Gt, P), TRANSPOSED, OUT_SPLIT)


def amalgamation_step(sr, side=None):
    """The inverse of :func:`step_from_split`: from the split matrix back to the original."""
    forward = step_from_split(sr, side)
    return make_step(forward.witness, forward.side, OUT_AMALGAMATE)


@dataclass(frozen=True)
class TFChain:
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise EmptyChain("a chain needs at least one step")

    @property
    def A(self):
        return self.steps[0].from_matrix

    @property
    def B(self):
        return self.steps[-1].to_matrix


@dataclass(frozen=True)
class TFReport:
    verdict: Verdict
    sse_chain: SSEChain | None

    def __bool__(self):
        return bool(self.verdict)


def verify_tf_chain(chain):
    """Verify every step and endpoint match; on success also return the implied SSE chain."""
    if not isinstance(chain, TFChain):
        chain = TFChain(tuple(chain))
    ees = []
    for idx, step in enumerate(chain.steps, start=1):
        if idx > 1 and not (chain.steps[idx - 2].to_matrix == step.from_matrix):
            return TFReport(Verdict.refuted(f"step {idx}", "does not start where the previous step ended"), None)
        v = step.check()
        if not v:
            return TFReport(Verdict.refuted(f"step {idx}", f"{v.locus}: {v.detail}"), None)
        ee = step.elementary_equivalence()
        ev = verify_elementary(ee)
        if not ev:
            return TFReport(Verdict.refuted(f"step {idx}", f"implied equivalence fails at {ev.locus}"), None)
        ees.append(ee)
    sides = sorted({s.side for s in chain.steps})
    detail = f"{len(ees)} step(s) on side(s) {', '.join(sides)}; {ADMISSIBILITY_NOTE}"
    return TFReport(Verdict.verified(detail), SSEChain(tuple(ees)))
