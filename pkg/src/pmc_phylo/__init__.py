"""Exact perfect phylogeny solvers built on weighted minimum-fill minimal
triangulations of the partition intersection graph."""

from pmc_phylo.characters import (
    CharacterSet,
    ColoredGraph,
    FillWeight,
    build_pig,
    displayed_characters,
    indicator_weight,
    induced_fill_weight,
    weight_of_fill,
)
from pmc_phylo.dp import MfiResult, fill_fw, global_result, minimum_fill_dp, solve_min_fill
from pmc_phylo.formats import emit_dot, emit_newick, parse_character_matrix, parse_weights
from pmc_phylo.graph import FillAssignment, Graph
from pmc_phylo.solvers import (
    MaxCompatResult,
    UniqueResult,
    Verdict,
    solve_max_compat_two_state,
    solve_perfect_phylogeny,
    solve_unique_pp,
    xtree_from_proper_triangulation,
)
from pmc_phylo.xtree import XTree, displays

__version__ = "0.1.0"
