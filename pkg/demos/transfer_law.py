"""
Moving cylinder functions across an elementary equivalence
==========================================================

phi sends functions on the A-shift to functions on the B-shift and psi
comes back.  Going there and back is the same as precomposing with the shift.
"""

from ssekit import CylinderFunction, check_transfer_law, from_matrix, out_split, phi_map, psi_map, shift_compose
from ssekit.shift_space import to_text
from ssekit.sse import ElementaryEquivalence

A = [[1, 1], [1, 0]]
ee = ElementaryEquivalence.from_split(out_split(from_matrix(A), {0: [[0], [1]]}))

# indicator of the first edge (the loop at vertex 1)
f = CylinderFunction.indicator(A, (0,))
print(to_text(f))
g = phi_map(ee, f)
print(to_text(g))

back = psi_map(ee, g)
print("psi(phi(f)) == f o shift:", back == shift_compose(f))

# the same statement for every function up to depth 2
print(check_transfer_law(ee, max_depth=2))
