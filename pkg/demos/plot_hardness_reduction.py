"""
From cliques to spanning circuits
=================================

The generator turns a regular graph, a clique size and a vertex partition
into a weighted spanning-circuit instance.  We print its size for K4.
"""

from __future__ import annotations

from itertools import combinations

from spancircuit import MultiGraph
from spancircuit.toolkit.generators import gen_clique_reduction

k4 = MultiGraph("abcd", [(u + v, u, v) for u, v in combinations("abcd", 2)])
red = gen_clique_reduction(k4, 2, [["a", "b"], ["c", "d"]])
print("vertices:", len(red.graph.vertices), "edges:", len(red.graph.edges))
print("terminals:", sorted(red.terminals), "budget:", red.budget)
