"""Spanning-circuit solvers on basic nodes and conflict trees."""

from .basic import (
    esc_cographic,
    esc_graphic,
    esc_r10,
    ewmsc_cographic,
    ewmsc_graphic,
    ewmsc_r10,
    solve_basic,
)
from .constraint import NO, CircuitConstraint, Outcome
from .tree import (
    Reduction,
    apply_leaf_rule,
    choose_root,
    deepest_leaf,
    scir_rule_1leaf,
    scir_rule_2leaf,
    scir_rule_3leaf,
    solve_esc,
    solve_ewmsc,
    solve_sc,
    solve_wmsc,
    wmsc_rule_1leaf,
    wmsc_rule_2leaf,
    wmsc_rule_3leaf,
)

__all__ = [
    "CircuitConstraint", "NO", "Outcome", "Reduction",
    "apply_leaf_rule", "choose_root", "deepest_leaf",
    "esc_cographic", "esc_graphic", "esc_r10",
    "ewmsc_cographic", "ewmsc_graphic", "ewmsc_r10",
    "scir_rule_1leaf", "scir_rule_2leaf", "scir_rule_3leaf",
    "solve_basic", "solve_esc", "solve_ewmsc", "solve_sc", "solve_wmsc",
    "wmsc_rule_1leaf", "wmsc_rule_2leaf", "wmsc_rule_3leaf",
]
