"""Undirected graphs on dense integer vertex ids.

Public functions take and return vertex sets as sorted tuples.  The hot paths
(separator and PMC enumeration, the dynamic program) work on Python ints used
as bitmasks; the ``*_mask`` helpers below are shared by those modules.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

VertexSet = tuple[int, ...]
Edge = tuple[int, int]


def vset(vertices: Iterable[int]) -> VertexSet:
    """Canonical form of a vertex collection: sorted, duplicate free."""
    return tuple(sorted(set(vertices)))


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> VertexSet:
    return tuple(iter_bits(mask))


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is a frozenset of neighbours (O(1) membership) and ``nbr[v]``
    the same set as a bitmask.
    """

    __slots__ = ("n", "adj", "nbr", "m")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            sets[u].add(v)
            sets[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in sets)
        self.nbr = tuple(to_mask(s) for s in sets)
        self.m = sum(len(s) for s in sets) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, list(self.edges()) + list(extra))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.nbr == other.nbr

    def __hash__(self) -> int:
        return hash((self.n, self.nbr))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- bitmask primitives ------------------------------------------------------

def component_masks(nbr: tuple[int, ...] | list[int], allowed: int) -> list[int]:
    """Connected components of the subgraph induced by ``allowed``.

    Components come out ordered by their smallest vertex.
    """
    comps = []
    rest = allowed
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= nbr[v]
            frontier = reach & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def neighborhood_mask(nbr: tuple[int, ...] | list[int], mask: int) -> int:
    """Open neighbourhood N(mask)."""
    out = 0
    for v in iter_bits(mask):
        out |= nbr[v]
    return out & ~mask


def fill_pairs_mask(g: Graph, mask: int) -> list[Edge]:
    """Non-edges inside ``mask``."""
    verts = from_mask(mask)
    pairs = []
    for u in verts:
        missing = mask & ~g.nbr[u] & ~((1 << (u + 1)) - 1)
        pairs.extend((u, v) for v in iter_bits(missing))
    return pairs


# -- public operations -------------------------------------------------------

def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[VertexSet]:
    """Components of ``g - removed``, each as a sorted tuple."""
    allowed = g.full_mask & ~to_mask(removed)
    return [from_mask(c) for c in component_masks(g.nbr, allowed)]


def potential_fill_edges(g: Graph, vertices: Iterable[int]) -> set[Edge]:
    return set(fill_pairs_mask(g, to_mask(vertices)))


def saturate(g: Graph, separators: Iterable[Iterable[int]]) -> Graph:
    """Add every missing edge inside each given vertex set."""
    extra: set[Edge] = set()
    for s in separators:
        extra.update(fill_pairs_mask(g, to_mask(s)))
    if not extra:
        return g
    return g.with_edges(extra)


def _mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visiting order (ties to the smallest id)."""
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        order.append(best)
        for u in g.adj[best]:
            if not visited[u]:
                weight[u] += 1
    return order


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality test; returns ``(True, peo)`` with a perfect elimination
    ordering, or ``(False, None)``.

    The reverse of an MCS order is a perfect elimination ordering exactly when
    the graph is chordal, so the test just verifies that ordering.
    """
    peo = _mcs_order(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        for u in later:
            if u != parent and u not in g.adj[parent]:
                return False, None
    return True, peo


def _maximal_clique_masks(g: Graph, peo: list[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(peo)}
    candidates = set()
    for v in peo:
        candidates.add((1 << v) | to_mask(u for u in g.adj[v] if pos[u] > pos[v]))
    cands = sorted(candidates, key=lambda c: -c.bit_count())
    maximal: list[int] = []
    for c in cands:
        if not any(c & k == c for k in maximal):
            maximal.append(c)
    return sorted(maximal, key=from_mask)


def maximal_cliques_of_chordal(g: Graph) -> list[VertexSet]:
    ok, peo = is_chordal(g)
    if not ok:
        raise ValueError("graph is not chordal")
    return [from_mask(c) for c in _maximal_clique_masks(g, peo)]


def clique_tree(g: Graph) -> tuple[list[VertexSet], list[Edge]]:
    """Clique tree of a chordal graph as ``(cliques, tree_edges)``.

    Built as a maximum-weight spanning tree of the clique intersection graph,
    which always satisfies the induced-subtree property.  Zero-weight links
    join the pieces of a disconnected graph, so the result is one tree.
    """
    cliques = maximal_cliques_of_chordal(g)
    masks = [to_mask(c) for c in cliques]
    k = len(cliques)
    candidates = sorted(
        ((-(masks[i] & masks[j]).bit_count(), i, j) for i in range(k) for j in range(i + 1, k))
    )
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for _, i, j in candidates:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            if len(edges) == k - 1:
                break
    return cliques, edges


@dataclass(frozen=True)
class FillAssignment:
    """A set of fill edges over a base graph."""

    base: Graph
    fill_edges: frozenset[Edge]

    def __post_init__(self):
        for u, v in self.fill_edges:
            if u >= v or self.base.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not a canonical non-edge of the base graph")

    @classmethod
    def of(cls, base: Graph, edges: Iterable[Edge]) -> "FillAssignment":
        return cls(base, frozenset(edge_key(u, v) for u, v in edges))

    def graph(self) -> Graph:
        return self.base.with_edges(self.fill_edges)

    def is_triangulation(self) -> bool:
        return is_chordal(self.graph())[0]

    def is_minimal(self) -> bool:
        """True when the fill is chordal and no single fill edge can be dropped.

        Dropping one edge suffices: a chordal graph with a removable
        non-empty fill set always has a single removable fill edge.
        """
        if not self.is_triangulation():
            return False
        for e in self.fill_edges:
            if is_chordal(self.base.with_edges(self.fill_edges - {e}))[0]:
                return False
        return True

    def __len__(self) -> int:
        return len(self.fill_edges)
