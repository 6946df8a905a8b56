"""X-trees: unrooted trees with a taxon-to-node map."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from pmc_phylo.graph import edge_key


@dataclass(frozen=True)
class XTree:
    """Tree on nodes ``0..num_nodes-1`` with ``phi`` mapping taxa to nodes.

    Several taxa may share a node, and labelled nodes may be internal.
    """

    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    phi: dict[str, int] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(edge_key(u, v) for u, v in self.edges)))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.num_nodes)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, node: int) -> int:
        return sum(1 for e in self.edges if node in e)

    def labels(self) -> list[list[str]]:
        out: list[list[str]] = [[] for _ in range(self.num_nodes)]
        for taxon, node in self.phi.items():
            out[node].append(taxon)
        return [sorted(ls) for ls in out]

    def is_valid(self) -> bool:
        """Connected, acyclic, and every node of degree <= 2 labelled."""
        if self.num_nodes == 0 or len(self.edges) != self.num_nodes - 1:
            return False
        adj = self.adjacency()
        seen = {0}
        todo = [0]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != self.num_nodes:
            return False
        labelled = set(self.phi.values())
        return all(len(adj[v]) > 2 or v in labelled for v in range(self.num_nodes)) or self.num_nodes == 1

    def contract(self, edge: tuple[int, int]) -> "XTree":
        """Merge the endpoints of ``edge`` into one node."""
        u, v = edge_key(*edge)
        if (u, v) not in self.edges:
            raise ValueError(f"{edge} is not an edge")
        remap = {}
        nxt = 0
        for w in range(self.num_nodes):
            if w == v:
                continue
            remap[w] = nxt
            nxt += 1
        remap[v] = remap[u]
        edges = [(remap[a], remap[b]) for a, b in self.edges if (a, b) != (u, v)]
        return XTree(self.num_nodes - 1, tuple(edges), {t: remap[n] for t, n in self.phi.items()})


def subtree_nodes(xt: XTree, taxa: Iterable[str]) -> set[int]:
    """Nodes of the minimal subtree connecting the images of ``taxa``."""
    terminals = set()
    for t in taxa:
        if t not in xt.phi:
            raise KeyError(f"taxon {t!r} is not placed on the tree")
        terminals.add(xt.phi[t])
    if not terminals:
        return set()
    adj = xt.adjacency()
    alive = set(range(xt.num_nodes))
    deg = {v: len(adj[v]) for v in alive}
    leaves = [v for v in alive if deg[v] <= 1 and v not in terminals]
    while leaves:
        v = leaves.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in terminals:
                    leaves.append(w)
    return alive


def displays(xt: XTree, character: Sequence[Sequence[str]]) -> bool:
    """True when the subtrees of distinct cells share no node."""
    used: set[int] = set()
    for cell in character:
        nodes = subtree_nodes(xt, cell)
        if used & nodes:
            return False
        used |= nodes
    return True


def edge_distinguished(xt: XTree, edge: tuple[int, int], character: Sequence[Sequence[str]]) -> bool:
    """True when the endpoints of ``edge`` lie in subtrees of two different
    cells of ``character``."""
    u, v = edge
    holders_u = set()
    holders_v = set()
    for i, cell in enumerate(character):
        nodes = subtree_nodes(xt, cell)
        if u in nodes:
            holders_u.add(i)
        if v in nodes:
            holders_v.add(i)
    return any(a != b for a in holders_u for b in holders_v)


def is_ternary(xt: XTree) -> bool:
    """Every internal node has degree three."""
    adj = xt.adjacency()
    return all(len(nb) == 3 for nb in adj if len(nb) > 1)


def is_phylogenetic(xt: XTree) -> bool:
    """Taxa label the leaves one-to-one and no internal node."""
    adj = xt.adjacency()
    labels = xt.labels()
    return all((len(labels[v]) == 1) == (len(adj[v]) <= 1) for v in range(xt.num_nodes)) \
        and all(len(ls) <= 1 for ls in labels)


def is_distinguished(xt: XTree, characters: Iterable[Sequence[Sequence[str]]]) -> bool:
    chars = list(characters)
    return all(any(edge_distinguished(xt, e, chi) for chi in chars) for e in xt.edges)


def suppress_unlabelled(num_nodes: int, edges: Iterable[tuple[int, int]], phi: dict[str, int]) -> XTree:
    """Prune unlabelled leaves and splice out unlabelled degree-2 nodes, then
    renumber the surviving nodes in their original order."""
    adj: dict[int, set[int]] = {v: set() for v in range(num_nodes)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    labelled = set(phi.values())
    changed = True
    while changed:
        changed = False
        for v in sorted(adj):
            if v in labelled or len(adj) == 1:
                continue
            nb = adj[v]
            if len(nb) <= 1:
                for w in nb:
                    adj[w].discard(v)
                del adj[v]
                changed = True
            elif len(nb) == 2:
                a, b = sorted(nb)
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    order = {v: i for i, v in enumerate(sorted(adj))}
    new_edges = tuple((order[u], order[v]) for u in adj for v in adj[u] if u < v)
    return XTree(len(order), new_edges, {t: order[n] for t, n in phi.items()})
