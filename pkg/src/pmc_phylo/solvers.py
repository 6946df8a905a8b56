"""Perfect phylogeny, two-state maximum compatibility and unique perfect
phylogeny on top of the weighted minimum fill dynamic program."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from pmc_phylo.characters import (
    CharacterError,
    CharacterSet,
    ColoredGraph,
    Number,
    build_pig,
    displayed_characters,
    indicator_weight,
    induced_fill_weight,
)
from pmc_phylo.dp import solve_min_fill
from pmc_phylo.graph import FillAssignment, clique_tree, edge_key, saturate, to_mask
from pmc_phylo.separators import pairwise_parallel
from pmc_phylo.xtree import XTree, displays, is_distinguished, is_phylogenetic, is_ternary, suppress_unlabelled


class SolverError(RuntimeError):
    pass


def xtree_from_proper_triangulation(cs: CharacterSet, cg: ColoredGraph, fa: FillAssignment) -> XTree:
    """X-tree read off a clique tree of a proper minimal triangulation.

    Taxon x goes to the lexicographically smallest maximal clique holding
    every vertex whose cell contains x (those vertices are pairwise adjacent).
    Unlabelled leaves and degree-2 nodes are then suppressed.
    """
    color = cg.color
    for u, v in fa.fill_edges:
        if color[u] == color[v]:
            raise ValueError(f"fill edge {(u, v)} is monochromatic; triangulation is not proper")
    h = fa.graph()
    cliques, tree_edges = clique_tree(h)
    if not cliques:
        return XTree(1, (), {t: 0 for t in cs.taxa})
    masks = [to_mask(c) for c in cliques]
    holders: dict[str, int] = {t: 0 for t in cs.taxa}
    for v, (cell, _) in enumerate(cg.labels):
        for t in cell:
            holders[t] |= 1 << v
    phi = {}
    for t in cs.taxa:
        need = holders[t]
        for i, m in enumerate(masks):
            if need & m == need:
                phi[t] = i
                break
        else:
            raise SolverError(f"no maximal clique holds all cells of taxon {t!r}")
    xt = suppress_unlabelled(len(cliques), tree_edges, phi)
    for i, chi in enumerate(cs.characters):
        if not displays(xt, chi):
            raise SolverError(f"constructed tree does not display character {cs.names[i]}")
    return xt


def solve_perfect_phylogeny(cs: CharacterSet) -> XTree | None:
    """A perfect phylogeny for ``cs``, or ``None`` when it is incompatible."""
    cg = build_pig(cs)
    res = solve_min_fill(cg.graph, indicator_weight(cg))
    if res.value > 0:
        return None
    return xtree_from_proper_triangulation(cs, cg, res.witness)


@dataclass(frozen=True)
class MaxCompatResult:
    characters: tuple[int, ...]
    weight: Number
    fill_value: Number
    tree: XTree


def solve_max_compat_two_state(cs: CharacterSet) -> MaxCompatResult:
    """Maximum-weight compatible subset of two-state characters.

    For two-state characters each character owns exactly one monochromatic
    pair, so the displayed characters of a minimum-weight minimal
    triangulation form an optimal subset and w(C) = value + w(C*).
    """
    for i, chi in enumerate(cs.characters):
        if len(chi) != 2:
            raise CharacterError(f"character {cs.names[i]} has {len(chi)} cells; two-state characters required")
    weighted = cs if cs.weights is not None else cs.with_weights([1] * len(cs))
    cg = build_pig(weighted)
    res = solve_min_fill(cg.graph, induced_fill_weight(weighted, cg))
    chosen = tuple(displayed_characters(weighted, cg, res.witness))
    weight = weighted.total_weight(chosen)
    if weighted.total_weight() != res.value + weight:
        raise SolverError(
            f"fill decomposition broken: w(C)={weighted.total_weight()} value={res.value} w(C*)={weight}")
    tree = solve_perfect_phylogeny(cs.subset(chosen))
    if tree is None:
        raise SolverError("displayed characters of the witness are not compatible")
    return MaxCompatResult(chosen, weight, res.value, tree)


class Verdict(enum.Enum):
    NO_PERFECT_PHYLOGENY = "NoPerfectPhylogeny"
    MULTIPLE_MINIMAL_TRIANGULATIONS = "MultipleMinimalTriangulations"
    NOT_TERNARY = "NotTernary"
    NOT_DISTINGUISHED = "NotDistinguished"
    UNIQUE = "Unique"


@dataclass(frozen=True)
class UniqueResult:
    verdict: Verdict
    tree: XTree | None = None

    @property
    def unique_triangulation(self) -> bool | None:
        """Whether the partition intersection graph has exactly one proper
        minimal triangulation (``None`` when it has none)."""
        if self.verdict is Verdict.NO_PERFECT_PHYLOGENY:
            return None
        return self.verdict is not Verdict.MULTIPLE_MINIMAL_TRIANGULATIONS


def solve_unique_pp(cs: CharacterSet) -> UniqueResult:
    """Decide whether ``cs`` has a unique perfect phylogeny.

    A zero-fill triangulation must exist and the separators used by the
    zero-fill minimal triangulations must be pairwise parallel; they then
    form the separator set of the single proper minimal triangulation, whose
    tree must be ternary and have every edge distinguished.

    Ternary here means a binary phylogenetic tree: each taxon alone on a
    leaf.  A node carrying two taxa, or an internal node carrying one, can
    be split by a new edge and the refined tree still displays every
    character, so such a tree is never the only perfect phylogeny.
    """
    cg = build_pig(cs)
    g = cg.graph
    res = solve_min_fill(g, indicator_weight(cg))
    if res.value > 0:
        return UniqueResult(Verdict.NO_PERFECT_PHYLOGENY)
    if not pairwise_parallel(g, res.delta_min):
        return UniqueResult(Verdict.MULTIPLE_MINIMAL_TRIANGULATIONS)
    h = saturate(g, res.delta_min)
    fill = frozenset(edge_key(u, v) for u, v in h.edges() if not g.has_edge(u, v))
    if fill != res.witness.fill_edges:
        raise SolverError("unique triangulation differs from the DP witness")
    tree = xtree_from_proper_triangulation(cs, cg, FillAssignment(g, fill))
    if not (is_ternary(tree) and is_phylogenetic(tree)):
        return UniqueResult(Verdict.NOT_TERNARY, tree)
    if not is_distinguished(tree, cs.characters):
        return UniqueResult(Verdict.NOT_DISTINGUISHED, tree)
    return UniqueResult(Verdict.UNIQUE, tree)
