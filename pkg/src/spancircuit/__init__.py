"""Spanning circuits in regular binary matroids given as conflict trees.

The package decides, with witnesses, whether a circuit through prescribed
elements exists (optionally within a weight budget) for a regular matroid
presented as a tree of graphic, cographic and R10-derived nodes.  It also
exposes the two graph engines underneath: minimal edge cuts through
prescribed edges and cheapest cycles through prescribed edges.
"""

from .ctse import CtseInstance, solve_ctse
from .decomp import BasicNode, ConflictTree, TreeEdge, compose, matroid_sum, validate
from .emwc import EmwcInstance, InvariantError, ParamPair, solve_emwc
from .gf2 import BinaryMatroid, Gf2Matrix, enumerate_circuits, is_circuit, r10
from .graph import MultiGraph, bond_matroid, cycle_matroid
from .solvers import CircuitConstraint, Outcome, solve_esc, solve_ewmsc, solve_sc, solve_wmsc

__all__ = [
    "BasicNode", "BinaryMatroid", "CircuitConstraint", "ConflictTree", "CtseInstance",
    "EmwcInstance", "Gf2Matrix", "InvariantError", "MultiGraph", "Outcome", "ParamPair",
    "TreeEdge", "bond_matroid", "compose", "cycle_matroid", "enumerate_circuits",
    "is_circuit", "matroid_sum", "r10", "solve_ctse", "solve_emwc", "solve_esc",
    "solve_ewmsc", "solve_sc", "solve_wmsc", "validate",
]
