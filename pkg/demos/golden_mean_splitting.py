"""
Splitting the golden mean shift
===============================

Split vertex 1 of the golden mean graph, look at the companion matrices,
and undo the split with an out-amalgamation.
"""

import numpy as np

from ssekit import edge_graph, from_matrix, out_amalgamate, out_split, verify_elementary
from ssekit.sse import ElementaryEquivalence

A = np.array([[1, 1], [1, 0]])
G = from_matrix(A)
for e in G.edges:
    print(e.id, e.label)

# Vertex 1 has two out-edges; put each in its own block.  Vertex 2 keeps one block.
sr = out_split(G, {0: [["1->1#1"], ["1->2#1"]]})
print("split vertices:", sr.graph.vertices)
print("split matrix:\n", sr.split_matrix.data)
print("C =\n", sr.C)
print("D =\n", sr.D)

# C D gives back A, D C gives the split matrix: the split is an elementary equivalence
print(verify_elementary(ElementaryEquivalence.from_split(sr)))

# The edge graph is the split where every edge gets its own block
fac = edge_graph(A)
print("edge graph agrees:", fac.AG == sr.split_matrix)

# Merging the two copies of vertex 1 recovers A
am = out_amalgamate(sr.graph, [0, 1])
print("amalgamated:\n", am.matrix.data)
