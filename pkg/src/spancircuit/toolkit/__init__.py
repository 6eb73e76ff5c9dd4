"""Oracles, generators, file formats and the command line."""

from .formats import (
    FormatError,
    dumps_graph,
    dumps_instance,
    dumps_matrix,
    dumps_tree,
    loads_graph,
    loads_instance,
    loads_matrix,
    loads_tree,
)
from .generators import CliqueReduction, gen_clique_reduction, gen_random_tree
from .oracles import (
    feasible_cuts,
    is_unbreakable,
    oracle_circuits,
    oracle_constraint,
    oracle_ctse,
    oracle_emwc,
    oracle_sc,
    oracle_wmsc,
)
from .generators import gen_ctse_instance, gen_emwc_instance, random_multigraph  # noqa: E402
