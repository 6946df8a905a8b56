"""Potential maximal cliques: membership test, enumeration, associated blocks."""
from __future__ import annotations

from typing import Iterable

from pmc_phylo.graph import (
    Graph,
    VertexSet,
    component_masks,
    from_mask,
    iter_bits,
    neighborhood_mask,
    to_mask,
)
from pmc_phylo.separators import Block, separator_masks


def is_pmc_mask(nbr, universe: int, k: int) -> bool:
    """PMC test inside the subgraph induced by ``universe``.

    K is a PMC iff no component of G - K is full for K and every non-adjacent
    pair of K is covered by the neighbourhood of some component.
    """
    nbhds = []
    for comp in component_masks(nbr, universe & ~k):
        nc = neighborhood_mask(nbr, comp) & universe
        if nc == k:
            return False
        if nc:
            nbhds.append(nc)
    for u in iter_bits(k):
        cover = nbr[u] | (1 << u)
        for nc in nbhds:
            if nc >> u & 1:
                cover |= nc
        if k & ~cover:
            return False
    return True


def is_pmc(g: Graph, k: Iterable[int]) -> bool:
    mask = to_mask(k)
    if not mask:
        return False
    return is_pmc_mask(g.nbr, g.full_mask, mask)


def _bfs_order(nbr, comp: int) -> list[int]:
    start = comp & -comp
    order = [start.bit_length() - 1]
    seen = start
    i = 0
    while i < len(order):
        for u in iter_bits(nbr[order[i]] & comp & ~seen):
            seen |= 1 << u
            order.append(u)
        i += 1
    return order


def _pmcs_of_connected(nbr, comp: int) -> set[int]:
    """Grow the graph one vertex at a time, lifting the PMC family.

    With G' = G + a, every PMC of G' is one of: a PMC of G (with or without
    a), S u {a} for S a minimal separator of G', or S u (T n C) for minimal
    separators S, T of G' and a full component C of S.  The last family is
    needed only when ``a`` is outside S and S is new in G'.  Each candidate is
    filtered through the PMC test.
    """
    order = _bfs_order(nbr, comp)
    prefix = 1 << order[0]
    pmcs = {prefix}
    old_seps: set[int] = set()
    for a in order[1:]:
        abit = 1 << a
        prefix |= abit
        new_seps = separator_masks(nbr, prefix)
        tried: set[int] = set()
        found: set[int] = set()

        def consider(k: int) -> None:
            if k not in tried:
                tried.add(k)
                if is_pmc_mask(nbr, prefix, k):
                    found.add(k)

        for om in pmcs:
            if is_pmc_mask(nbr, prefix, om):
                found.add(om)
                tried.add(om)
            else:
                consider(om | abit)
        for s in new_seps:
            consider(s | abit)
            if s & abit or s in old_seps:
                continue
            for c in component_masks(nbr, prefix & ~s):
                if neighborhood_mask(nbr, c) & prefix != s:
                    continue
                for t in new_seps:
                    inner = t & c
                    if inner:
                        consider(s | inner)
        pmcs = found
        old_seps = new_seps
    return pmcs


def pmc_masks(nbr, universe: int) -> set[int]:
    out: set[int] = set()
    for comp in component_masks(nbr, universe):
        out |= _pmcs_of_connected(nbr, comp)
    return out


def enumerate_pmcs(g: Graph, separators: Iterable[Iterable[int]] | None = None) -> set[VertexSet]:
    """All potential maximal cliques of ``g``.

    ``separators`` is accepted for interface symmetry with the dynamic
    program; the enumeration recomputes separators of each growing prefix.
    """
    return {from_mask(k) for k in pmc_masks(g.nbr, g.full_mask)}


def blocks_associated(g: Graph, k: Iterable[int]) -> list[Block]:
    """Full blocks ``(N(C), C)`` for the components C of G - K."""
    mask = to_mask(k)
    out = []
    for comp in component_masks(g.nbr, g.full_mask & ~mask):
        nc = neighborhood_mask(g.nbr, comp)
        if nc:
            s = from_mask(nc)
            out.append(Block(s, from_mask(comp), s))
    return out


def pmc_bound(n: int, num_separators: int) -> int:
    return n * num_separators ** 2 + n * num_separators + 1


def pmc_bound_holds(g: Graph, separators: Iterable[Iterable[int]], pmcs: Iterable[Iterable[int]]) -> bool:
    """Check |pmc| <= n|D|^2 + n|D| + 1 on every connected component.

    The bound is stated for connected graphs; on a disconnected graph each
    component contributes its own PMCs, so it is checked per component.
    """
    sep_masks = [to_mask(s) for s in separators]
    pmc_list = [to_mask(k) for k in pmcs]
    for comp in component_masks(g.nbr, g.full_mask):
        n = comp.bit_count()
        ns = sum(1 for s in sep_masks if s & comp)
        npmc = sum(1 for k in pmc_list if k & comp)
        if npmc > pmc_bound(n, ns):
            return False
    return True
