"""
A chain using both sides
========================

Out-split [2] directly, then come back with a move taken on the transposed
matrix (an in-amalgamation).  The verifier produces the implied chain of
elementary equivalences, which carries the usual invariants.
"""

from ssekit import TFChain, from_matrix, in_split, out_split, step_from_split, trace_sequence, verify_tf_chain
from ssekit.bowen_franks import bowen_franks_group, check_diagram
from ssekit.transpose_free import amalgamation_step

forward = step_from_split(out_split(from_matrix([[2]]), {0: [[0], [1]]}))
back = amalgamation_step(in_split(from_matrix([[2]]), {0: [[0], [1]]}))
print(forward.side, forward.move, forward.from_matrix.tolist(), "->", forward.to_matrix.tolist())
print(back.side, back.move, back.from_matrix.tolist(), "->", back.to_matrix.tolist())

report = verify_tf_chain(TFChain([forward, back]))
print(report.verdict)

chain = report.sse_chain
print("traces:", trace_sequence(chain.A, 6), trace_sequence(chain.B, 6))
print("groups:", bowen_franks_group(chain.A), "/", bowen_franks_group(chain.B))
print(check_diagram(chain, require_units=False))
