"""Minimal separators, blocks, realizations and the parallel relation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from pmc_phylo.graph import (
    Graph,
    VertexSet,
    component_masks,
    fill_pairs_mask,
    from_mask,
    iter_bits,
    neighborhood_mask,
    to_mask,
)


@dataclass(frozen=True, order=True)
class Block:
    """Component ``component`` of G - ``separator`` with its neighbourhood."""

    separator: VertexSet
    component: VertexSet
    neighborhood: VertexSet

    @property
    def is_full(self) -> bool:
        return self.neighborhood == self.separator

    @property
    def vertices(self) -> VertexSet:
        return tuple(sorted(self.separator + self.component))


def separator_masks(nbr, universe: int) -> set[int]:
    """All minimal separators of the subgraph induced by ``universe``.

    Seeds with the neighbourhoods of the components of G - N[v], then closes
    under S -> N(C) for the components C of G - (S u N(x)), x in S.  Empty
    neighbourhoods (other connected components) are skipped, so each
    separator lives inside one connected component.
    """
    seps: set[int] = set()
    todo: list[int] = []

    def harvest(removed: int) -> None:
        for comp in component_masks(nbr, universe & ~removed):
            s = neighborhood_mask(nbr, comp) & universe
            if s and s not in seps:
                seps.add(s)
                todo.append(s)

    for v in iter_bits(universe):
        harvest((1 << v) | (nbr[v] & universe))
    while todo:
        s = todo.pop()
        for x in iter_bits(s):
            harvest(s | (nbr[x] & universe))
    return seps


def is_minimal_separator(g: Graph, s: Iterable[int]) -> bool:
    """True iff G - S has at least two components C with N(C) = S."""
    mask = to_mask(s)
    if not mask:
        return False
    full = 0
    for comp in component_masks(g.nbr, g.full_mask & ~mask):
        if neighborhood_mask(g.nbr, comp) == mask:
            full += 1
            if full == 2:
                return True
    return False


def enumerate_minimal_separators(g: Graph) -> set[VertexSet]:
    return {from_mask(s) for s in separator_masks(g.nbr, g.full_mask)}


def blocks(g: Graph, s: Iterable[int]) -> list[Block]:
    """Every component of G - S as a block of S (full or not)."""
    mask = to_mask(s)
    sep = from_mask(mask)
    return [
        Block(sep, from_mask(c), from_mask(neighborhood_mask(g.nbr, c)))
        for c in component_masks(g.nbr, g.full_mask & ~mask)
    ]


def full_blocks(g: Graph, s: Iterable[int]) -> list[Block]:
    """Full blocks ``(N(C), C)`` for the components C of G - S.

    A component whose neighbourhood is a proper subset S' of S is reported
    as the full block of S'.  Components with empty neighbourhood lie in
    other connected components and are skipped.
    """
    out = []
    for b in blocks(g, s):
        if b.neighborhood:
            out.append(Block(b.neighborhood, b.component, b.neighborhood))
    return out


def all_full_blocks(g: Graph, separators: Iterable[Iterable[int]]) -> list[Block]:
    """Every full block of the given separators once, smallest first."""
    found = set()
    for s in separators:
        found.update(b for b in full_blocks(g, s))
    return sorted(found, key=lambda b: (len(b.separator) + len(b.component), b))


def full_block_masks(nbr, universe: int, seps: Iterable[int]) -> list[tuple[int, int]]:
    """Mask version of :func:`all_full_blocks`: ``(S, C)`` pairs with
    ``N(C) = S``, sorted by ``|S| + |C|``."""
    found: dict[int, int] = {}
    for s in seps:
        for c in component_masks(nbr, universe & ~s):
            ns = neighborhood_mask(nbr, c) & universe
            if ns:
                found[c] = ns
    return sorted(((s, c) for c, s in found.items()),
                  key=lambda sc: ((sc[0] | sc[1]).bit_count(), from_mask(sc[0]), from_mask(sc[1])))


def realization(g: Graph, block: Block) -> tuple[VertexSet, Graph]:
    """The realization R(S, C): G[S u C] with S saturated.

    Returned as ``(vertices, graph)`` where ``graph`` uses positions in
    ``vertices`` as its vertex ids.
    """
    s_mask = to_mask(block.separator)
    mask = s_mask | to_mask(block.component)
    verts = from_mask(mask)
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for u in verts:
        for v in iter_bits(g.nbr[u] & mask):
            if u < v:
                edges.add((index[u], index[v]))
    for u, v in fill_pairs_mask(g, s_mask):
        edges.add((index[u], index[v]))
    return verts, Graph(len(verts), edges)


def are_parallel(g: Graph, s: Iterable[int], t: Iterable[int]) -> bool:
    """True when T meets at most one component of G - S.

    "At most" (not "exactly") so that T contained in S counts as parallel.
    """
    s_mask = to_mask(s)
    t_mask = to_mask(t)
    hits = 0
    for comp in component_masks(g.nbr, g.full_mask & ~s_mask):
        if comp & t_mask:
            hits += 1
            if hits > 1:
                return False
    return True


def pairwise_parallel(g: Graph, separators: Iterable[Iterable[int]]) -> bool:
    seps = [tuple(s) for s in separators]
    return all(are_parallel(g, a, b) for i, a in enumerate(seps) for b in seps[i + 1:])
