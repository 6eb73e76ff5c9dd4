"""
Minimal cuts through prescribed edges
=====================================

A minimal edge cut must split exactly one component into two connected
halves.  Here we look for one that contains a given edge, separates two
vertex sets and adds as little extra weight as possible.
"""

from __future__ import annotations

from spancircuit import EmwcInstance, MultiGraph, solve_emwc
from spancircuit.toolkit.oracles import oracle_emwc

# %%
# A square with one heavy side.  The cut must contain ``ab`` and keep ``a``
# apart from ``c``.

square = MultiGraph("abcd", [("ab", "a", "b"), ("bc", "b", "c", 3), ("cd", "c", "d"), ("da", "d", "a")])
inst = EmwcInstance(square, {"ab"}, {"a"}, {"c"}, 2)
cut = solve_emwc(inst)
print("cut:", sorted(cut), "extra weight:", oracle_emwc(inst))

# %%
# Shrinking the budget below the optimum turns the answer into a no.

print("budget 0:", solve_emwc(EmwcInstance(square, {"ab"}, {"a"}, {"c"}, 0)))
