"""Weighted minimum fill over minimal triangulations via potential maximal cliques.

Full blocks are evaluated smallest first.  The value of a full block (S, C)
is the cheapest way to triangulate its realization, minimised over PMCs K
with S < K <= S u C of

    fill(K) - fill(S) + sum of the values of K's blocks inside C.

A graph's value is the minimum over separators S of fill(S) plus the values
of the blocks of S.  Connected components are handled independently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from pmc_phylo.characters import FillWeight, Number
from pmc_phylo.graph import (
    FillAssignment,
    Graph,
    VertexSet,
    component_masks,
    fill_pairs_mask,
    from_mask,
    iter_bits,
    neighborhood_mask,
    to_mask,
)
from pmc_phylo.pmc import pmc_bound_holds, pmc_masks
from pmc_phylo.separators import full_block_masks, separator_masks

INF = math.inf


class DpError(RuntimeError):
    pass


def fill_fw(fw: FillWeight, vertices: Iterable[int]) -> Number:
    """Total fill weight of the potential fill edges inside ``vertices``."""
    return fw.fill_of_mask(to_mask(vertices))


@dataclass
class DpTable:
    """Block values keyed by component mask (a full block is determined by
    its component, since S = N(C)), the PMC chosen per block, and the value of
    the best triangulation saturating each separator."""

    graph: Graph
    block_value: dict[int, Number]
    block_separator: dict[int, int]
    block_choice: dict[int, int]
    sep_value: dict[int, Number]
    # components of G - K with non-empty neighbourhood, per PMC
    pmc_blocks: dict[int, list[int]] = field(repr=False)

    def value(self, separator: Iterable[int], component: Iterable[int]) -> Number:
        c = to_mask(component)
        if self.block_separator.get(c) != to_mask(separator):
            raise KeyError("not a full block")
        return self.block_value[c]

    def choice(self, component: Iterable[int]) -> VertexSet:
        return from_mask(self.block_choice[to_mask(component)])

    def separator_value(self, separator: Iterable[int]) -> Number:
        return self.sep_value[to_mask(separator)]

    def blocks(self) -> list[tuple[VertexSet, VertexSet, Number]]:
        return [(from_mask(self.block_separator[c]), from_mask(c), v)
                for c, v in self.block_value.items()]


@dataclass(frozen=True)
class MfiResult:
    value: Number
    delta_min: frozenset[VertexSet]
    witness: FillAssignment
    num_separators: int = 0
    num_pmcs: int = 0


def _component_containing(nbr, allowed: int, seed: int) -> int:
    comp = seed
    frontier = seed
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= nbr[v]
        frontier = reach & allowed & ~comp
        comp |= frontier
    return comp


def _lex_less(a: int, b: int | None) -> bool:
    return b is None or from_mask(a) < from_mask(b)


def minimum_fill_dp(g: Graph, fw: FillWeight, separators: Iterable[Iterable[int]],
                    pmcs: Iterable[Iterable[int]]) -> DpTable:
    nbr = g.nbr
    full = g.full_mask
    seps = {to_mask(s) for s in separators}
    pmc_list = sorted({to_mask(k) for k in pmcs}, key=from_mask)

    fill_cache: dict[int, Number] = {}

    def fill(mask: int) -> Number:
        val = fill_cache.get(mask)
        if val is None:
            val = fill_cache[mask] = fw.fill_of_mask(mask)
        return val

    block_list = full_block_masks(nbr, full, seps)
    block_separator = {c: s for s, c in block_list}

    # A PMC K lies in the full block (S_i, C) for each component C_i of G - K,
    # with S_i = N(C_i) and C the component of G - S_i holding K - S_i.
    pmc_blocks: dict[int, list[int]] = {}
    candidates: dict[int, list[int]] = {}
    for k in pmc_list:
        inner = []
        for ci in component_masks(nbr, full & ~k):
            si = neighborhood_mask(nbr, ci)
            if not si:
                continue
            inner.append(ci)
            rest = k & ~si
            c = _component_containing(nbr, full & ~si, rest & -rest)
            if rest & ~c or block_separator.get(c) != si:
                raise DpError(f"PMC {from_mask(k)} is not covered by a full block of {from_mask(si)}")
            bucket = candidates.setdefault(c, [])
            if not bucket or bucket[-1] != k:
                bucket.append(k)
        pmc_blocks[k] = inner

    block_value: dict[int, Number] = {}
    block_choice: dict[int, int] = {}
    for s, c in block_list:
        best: Number = INF
        best_k = None
        base = fill(s)
        for k in candidates.get(c, ()):
            val = fill(k) - base
            for ci in pmc_blocks[k]:
                if ci & c:
                    val += block_value[ci]
            if val < best or (val == best and _lex_less(k, best_k)):
                best, best_k = val, k
        if best_k is None:
            raise DpError(f"no PMC covers full block {from_mask(s)} | {from_mask(c)}")
        block_value[c] = best
        block_choice[c] = best_k

    sep_value: dict[int, Number] = {}
    for s in seps:
        val = fill(s)
        for c in component_masks(nbr, full & ~s):
            if neighborhood_mask(nbr, c):
                val += block_value[c]
        sep_value[s] = val

    return DpTable(g, block_value, block_separator, block_choice, sep_value, pmc_blocks)


def global_result(g: Graph, fw: FillWeight, table: DpTable) -> MfiResult:
    """Total value, the argmin separators and a witness triangulation.

    Per connected component: a component without minimal separators is a
    clique and costs nothing; otherwise its value is the minimum separator
    value.  Ties pick the lexicographically smallest separator.
    """
    nbr = g.nbr
    full = g.full_mask
    total: Number = 0
    delta_min: set[VertexSet] = set()
    fill: set[tuple[int, int]] = set()
    stack: list[int] = []
    for comp in component_masks(nbr, full):
        local = [s for s in table.sep_value if s & comp]
        if not local:
            continue
        best = min(table.sep_value[s] for s in local)
        argmin = sorted((from_mask(s) for s in local if table.sep_value[s] == best))
        total += best
        delta_min.update(argmin)
        chosen = to_mask(argmin[0])
        fill.update(fill_pairs_mask(g, chosen))
        stack.extend(c for c in component_masks(nbr, comp & ~chosen) if neighborhood_mask(nbr, c))
    while stack:
        c = stack.pop()
        k = table.block_choice[c]
        fill.update(fill_pairs_mask(g, k))
        stack.extend(ci for ci in table.pmc_blocks[k] if ci & c)
    return MfiResult(total, frozenset(delta_min), FillAssignment(g, frozenset(fill)))


def solve_min_fill(g: Graph, fw: FillWeight, verify: bool = True) -> MfiResult:
    """Full pipeline: separators, PMCs, the block DP and the traceback.

    With ``verify`` the PMC count bound and the witness (chordal, minimal,
    weight equal to the value) are checked and a failure raises
    :class:`DpError`.
    """
    seps = separator_masks(g.nbr, g.full_mask)
    pmcs = pmc_masks(g.nbr, g.full_mask)
    sep_sets = [from_mask(s) for s in seps]
    pmc_sets = [from_mask(k) for k in pmcs]
    if not pmc_bound_holds(g, sep_sets, pmc_sets):
        raise DpError("PMC count exceeds n|D|^2 + n|D| + 1")
    table = minimum_fill_dp(g, fw, sep_sets, pmc_sets)
    res = global_result(g, fw, table)
    if verify:
        w = sum((fw(u, v) for u, v in res.witness.fill_edges), 0)
        if w != res.value:
            raise DpError(f"witness weight {w} differs from value {res.value}")
        if not res.witness.is_minimal():
            raise DpError("witness is not a minimal triangulation")
    return MfiResult(res.value, res.delta_min, res.witness, len(seps), len(pmcs))
