"""
Bowen-Franks groups along a chain
=================================

Compute cokernel groups, then check that the maps induced by a chain of
elementary equivalences are isomorphisms that agree with the product map.
"""

from ssekit import bowen_franks_group, check_diagram, check_edge_identities, unit_class
from ssekit.sse import chain_from_witnesses, search_elementary

for A in ([[2]], [[3]], [[1, 1], [1, 0]], [[2, 2], [2, 2]], [[1]]):
    print(A, "->", bowen_franks_group(A), " unit class", unit_class(A))

# [2] -> [[1,1],[1,1]] -> [2], using the same witness forwards and backwards
chain = chain_from_witnesses([([[1, 1]], [[1], [1]]), ([[1], [1]], [[1, 1]])])
print(check_diagram(chain))
print(check_edge_identities(chain.steps[0]))

# [2] and [3] have different groups, and indeed no small witness exists
print("witnesses for [2] ~ [3]:", search_elementary([[2]], [[3]], entry_bound=2))
print("witnesses for [2] ~ [[1,1],[1,1]]:", search_elementary([[2]], [[1, 1], [1, 1]], entry_bound=1))
