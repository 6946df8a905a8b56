"""Brute-force reference implementations for desk-sized instances.

Nothing here uses the separator, PMC or DP modules except where a function
says so; everything runs on plain Python sets so it can be audited by eye.
Size caps are enforced by raising :class:`OracleRefusal`, never by
truncating.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache

from pmc_phylo.characters import CharacterSet, FillWeight, Number, build_pig, indicator_weight
from pmc_phylo.graph import FillAssignment, Graph, VertexSet, edge_key
from pmc_phylo.xtree import XTree

CAP_ENV = "PMC_PHYLO_ORACLE_CAP"


class OracleRefusal(ValueError):
    pass


@dataclass(frozen=True)
class OracleCaps:
    """``max_vertices`` bounds triangulation enumeration, ``max_characters``
    the subset scan of maximum compatibility, ``max_compat_vertices`` the
    subset-DP compatibility test and ``max_taxa`` the X-tree enumeration."""

    max_vertices: int = 10
    max_characters: int = 6
    max_compat_vertices: int = 16
    max_taxa: int = 5

    @classmethod
    def from_env(cls) -> "OracleCaps":
        """Read ``PMC_PHYLO_ORACLE_CAP`` as ``V``, ``V,K``, ``V,K,W`` or ``V,K,W,T``."""
        raw = os.environ.get(CAP_ENV, "").strip()
        if not raw:
            return cls()
        try:
            parts = [int(p) for p in raw.split(",")]
        except ValueError:
            raise OracleRefusal(f"malformed {CAP_ENV}={raw!r}") from None
        if not 1 <= len(parts) <= 4 or min(parts) < 0:
            raise OracleRefusal(f"malformed {CAP_ENV}={raw!r}")
        default = cls()
        return cls(
            parts[0],
            parts[1] if len(parts) > 1 else default.max_characters,
            parts[2] if len(parts) > 2 else max(default.max_compat_vertices, parts[0]),
            parts[3] if len(parts) > 3 else default.max_taxa,
        )


def _caps(caps: OracleCaps | None) -> OracleCaps:
    return caps if caps is not None else OracleCaps.from_env()


def _check_vertices(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise OracleRefusal(f"graph has {g.n} vertices, oracle cap is {limit}")


# -- small set-based helpers -------------------------------------------------

def _components(adj, vertices) -> list[set[int]]:
    left = set(vertices)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        todo = [start]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w in left and w not in comp:
                    comp.add(w)
                    todo.append(w)
        left -= comp
        comps.append(comp)
    return comps


def _same_component(adj, vertices, x, y) -> bool:
    for comp in _components(adj, vertices):
        if x in comp:
            return y in comp
    return False


def _simplicial_chordal(adj) -> bool:
    """Chordal iff vertices can be deleted one simplicial vertex at a time."""
    alive = set(range(len(adj)))
    while alive:
        for v in sorted(alive):
            nb = [u for u in adj[v] if u in alive]
            if all(b in adj[a] for a, b in itertools.combinations(nb, 2)):
                alive.remove(v)
                break
        else:
            return False
    return True


def _adj_with(g: Graph, fill) -> list[set[int]]:
    adj = [set(s) for s in g.adj]
    for u, v in fill:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _bron_kerbosch(candidates: set, compatible) -> list[frozenset]:
    """All maximal sets of pairwise ``compatible`` items."""
    out: list[frozenset] = []

    def expand(r: frozenset, p: set, x: set) -> None:
        if not p and not x:
            out.append(r)
            return
        for v in sorted(p, key=repr):
            expand(r | {v}, {u for u in p if u != v and compatible(u, v)},
                   {u for u in x if u != v and compatible(u, v)})
            p = p - {v}
            x = x | {v}

    expand(frozenset(), set(candidates), set())
    return out


# -- separators and PMCs -----------------------------------------------------

def _separates(adj, n, s: set, x: int, y: int) -> bool:
    return not _same_component(adj, set(range(n)) - s, x, y)


def _is_minimal_separator_literal(adj, n: int, s: set) -> bool:
    """S is a minimal xy-separator for some connected pair x, y.

    Separation is monotone under adding vertices other than x and y, so
    minimality only needs the single-vertex removals.
    """
    everything = set(range(n))
    rest = everything - s
    for x, y in itertools.combinations(sorted(rest), 2):
        if not _same_component(adj, everything, x, y):
            continue
        if not _separates(adj, n, s, x, y):
            continue
        if all(not _separates(adj, n, s - {z}, x, y) for z in s):
            return True
    return False


def brute_minimal_separators(g: Graph, caps: OracleCaps | None = None) -> set[VertexSet]:
    _check_vertices(g, _caps(caps).max_vertices)
    adj = [set(s) for s in g.adj]
    found = set()
    for r in range(1, g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            if _is_minimal_separator_literal(adj, g.n, set(s)):
                found.add(s)
    return found


def brute_pmcs(g: Graph, caps: OracleCaps | None = None) -> set[VertexSet]:
    """Exhaustive filter of all non-empty vertex sets by the PMC predicate."""
    from pmc_phylo.pmc import is_pmc

    _check_vertices(g, _caps(caps).max_vertices)
    return {
        k
        for r in range(1, g.n + 1)
        for k in itertools.combinations(range(g.n), r)
        if is_pmc(g, k)
    }


def pmcs_from_triangulations(g: Graph, caps: OracleCaps | None = None) -> set[VertexSet]:
    """Union of the maximal cliques of every minimal triangulation."""
    out = set()
    for fa in brute_minimal_triangulations(g, caps):
        adj = _adj_with(g, fa.fill_edges)
        cliques = _bron_kerbosch(set(range(g.n)), lambda u, v: u in adj[v])
        out.update(tuple(sorted(c)) for c in cliques if c)
    return out


# -- minimal triangulations --------------------------------------------------

def _parallel_literal(adj, n: int, s, t) -> bool:
    comps = _components(adj, set(range(n)) - set(s))
    return sum(1 for c in comps if c & set(t)) <= 1


def triangulations_by_separators(g: Graph, caps: OracleCaps | None = None) -> dict[frozenset, frozenset]:
    """Fill edge set -> separator family, one per maximal pairwise-parallel
    family of minimal separators (each saturated)."""
    caps = _caps(caps)
    seps = brute_minimal_separators(g, caps)
    adj = [set(s) for s in g.adj]
    out: dict[frozenset, frozenset] = {}
    for family in _bron_kerbosch(seps, lambda s, t: _parallel_literal(adj, g.n, s, t)):
        fill = set()
        for s in family:
            for u, v in itertools.combinations(s, 2):
                if v not in adj[u]:
                    fill.add(edge_key(u, v))
        out[frozenset(fill)] = frozenset(family)
    return out


def triangulations_by_elimination(g: Graph, caps: OracleCaps | None = None) -> set[frozenset]:
    """Inclusion-minimal fill sets over all elimination orderings.

    Every minimal triangulation is the elimination fill of its own perfect
    elimination ordering, so the minimal elements of this family are exactly
    the minimal triangulations.  Eliminating x after the set S adds the pairs
    xy where y is reachable from x through S; the recursion is memoised on S.
    """
    _check_vertices(g, _caps(caps).max_vertices)
    n = g.n
    adj = [set(s) for s in g.adj]

    def fill_from(x: int, done: frozenset) -> frozenset:
        seen = {x}
        todo = [x]
        hit = set()
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w in seen:
                    continue
                seen.add(w)
                if w in done:
                    todo.append(w)
                else:
                    hit.add(w)
        return frozenset(edge_key(x, y) for y in hit if y not in adj[x])

    def minimal(family: set[frozenset]) -> set[frozenset]:
        return {f for f in family if not any(o < f for o in family)}

    @lru_cache(maxsize=None)
    def options(done: frozenset) -> frozenset:
        if len(done) == n:
            return frozenset([frozenset()])
        family = set()
        for x in range(n):
            if x in done:
                continue
            own = fill_from(x, done)
            for rest in options(done | {x}):
                family.add(own | rest)
        return frozenset(minimal(family))

    return set(options(frozenset()))


def brute_minimal_triangulations(g: Graph, caps: OracleCaps | None = None) -> list[FillAssignment]:
    """All minimal triangulations, computed two independent ways.

    Raises ``AssertionError`` if the two methods disagree or a result is not
    chordal.
    """
    by_sep = set(triangulations_by_separators(g, caps))
    by_elim = triangulations_by_elimination(g, caps)
    if by_sep != by_elim:
        raise AssertionError(
            f"oracle self-check failed: {len(by_sep)} vs {len(by_elim)} minimal triangulations")
    for fill in by_sep:
        if not _simplicial_chordal(_adj_with(g, fill)):
            raise AssertionError("oracle produced a non-chordal triangulation")
    return [FillAssignment(g, f) for f in sorted(by_sep, key=sorted)]


# -- optimisation ------------------------------------------------------------

def _weight(fw: FillWeight, fill) -> Number:
    return sum((fw(u, v) for u, v in fill), 0)


def brute_mfi(g: Graph, fw: FillWeight, caps: OracleCaps | None = None) -> Number:
    return min(_weight(fw, fa.fill_edges) for fa in brute_minimal_triangulations(g, caps))


def brute_delta_min(g: Graph, fw: FillWeight, caps: OracleCaps | None = None) -> set[VertexSet]:
    """Union of the separator families of all minimum-weight minimal
    triangulations."""
    families = triangulations_by_separators(g, caps)
    best = min(_weight(fw, fill) for fill in families)
    out: set[VertexSet] = set()
    for fill, family in families.items():
        if _weight(fw, fill) == best:
            out.update(family)
    return out


def brute_compatible(cs: CharacterSet, caps: OracleCaps | None = None) -> bool:
    """Compatibility via a search over elimination orders with no
    monochromatic fill (a proper triangulation has a perfect elimination
    ordering whose fill it contains)."""
    cg = build_pig(cs)
    g = cg.graph
    _check_vertices(g, _caps(caps).max_compat_vertices)
    color = cg.color
    adj = [set(s) for s in g.adj]
    n = g.n

    def proper_step(x: int, done: int) -> bool:
        seen = {x}
        todo = [x]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w in seen:
                    continue
                seen.add(w)
                if done >> w & 1:
                    todo.append(w)
                elif color[w] == color[x] and w not in adj[x]:
                    return False
        return True

    @lru_cache(maxsize=None)
    def ok(done: int) -> bool:
        if done == (1 << n) - 1:
            return True
        return any(
            not done >> x & 1 and proper_step(x, done) and ok(done | 1 << x)
            for x in range(n)
        )

    return ok(0)


def brute_max_compat(cs: CharacterSet, caps: OracleCaps | None = None) -> tuple[Number, list[tuple[int, ...]]]:
    """Best total weight of a compatible subset and every subset reaching it."""
    caps = _caps(caps)
    k = len(cs)
    if k > caps.max_characters:
        raise OracleRefusal(f"{k} characters, oracle cap is {caps.max_characters}")
    subsets = [s for r in range(k + 1) for s in itertools.combinations(range(k), r)]
    subsets.sort(key=lambda s: -cs.total_weight(s))
    best = None
    winners: list[tuple[int, ...]] = []
    for s in subsets:
        w = cs.total_weight(s)
        if best is not None and w < best:
            break
        if brute_compatible(cs.subset(s), caps):
            best = w
            winners.append(s)
    return best, winners


def proper_minimal_triangulations(cs: CharacterSet, caps: OracleCaps | None = None) -> list[FillAssignment]:
    cg = build_pig(cs)
    ic = indicator_weight(cg)
    return [fa for fa in brute_minimal_triangulations(cg.graph, caps) if _weight(ic, fa.fill_edges) == 0]


# -- X-trees -------------------------------------------------------------------

def _set_partitions(items: list) -> list[list[list]]:
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for p in _set_partitions(rest):
        out.append([[first]] + p)
        for i in range(len(p)):
            out.append(p[:i] + [[first] + p[i]] + p[i + 1:])
    return out


def _prufer_tree(seq: tuple, n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return edges


@lru_cache(maxsize=None)
def _shapes(labelled: int, unlabelled: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Every tree on nodes ``0..labelled+unlabelled-1`` in which the last
    ``unlabelled`` nodes have degree at least three."""
    n = labelled + unlabelled
    if n == 1:
        return ((),)
    if n == 2:
        return ((),) if unlabelled else (((0, 1),),)
    out = []
    for seq in itertools.product(range(n), repeat=n - 2):
        if all(seq.count(v) >= 2 for v in range(labelled, n)):
            out.append(tuple(_prufer_tree(seq, n)))
    return tuple(out)


def _path_nodes(adj, a: int, b: int) -> set[int]:
    parent = {a: None}
    todo = [a]
    while todo:
        u = todo.pop()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                todo.append(w)
    nodes = set()
    v = b
    while v is not None:
        nodes.add(v)
        v = parent[v]
    return nodes


def _displays_literal(adj, phi: dict, character) -> bool:
    """Cell subtrees as unions of pairwise paths, checked for overlap."""
    used: set[int] = set()
    for cell in character:
        nodes = {phi[cell[0]]}
        for a, b in itertools.combinations(cell, 2):
            nodes |= _path_nodes(adj, phi[a], phi[b])
        if used & nodes:
            return False
        used |= nodes
    return True


def _canonical(adj, names: list[str]) -> str:
    def enc(v: int, parent: int) -> str:
        return "(" + names[v] + "".join(sorted(enc(w, v) for w in adj[v] if w != parent)) + ")"

    return min(enc(r, -1) for r in range(len(adj)))


def xtree_canonical(xt: XTree) -> str:
    """Isomorphism invariant of an X-tree (label-preserving)."""
    names = ["[" + ",".join(ls) + "]" for ls in xt.labels()]
    return _canonical(xt.adjacency(), names)


def brute_perfect_phylogenies(cs: CharacterSet, caps: OracleCaps | None = None) -> list[XTree]:
    """Every X-tree displaying ``cs``, one per isomorphism class.

    X-trees have every node of degree at most two labelled, so a tree with
    k labelled nodes has at most k - 2 unlabelled ones and the search is
    finite: set partitions of X onto labelled nodes times tree shapes.
    """
    caps = _caps(caps)
    taxa = list(cs.taxa)
    if len(taxa) > caps.max_taxa:
        raise OracleRefusal(f"{len(taxa)} taxa, oracle cap is {caps.max_taxa}")
    found: dict[str, XTree] = {}
    for blocks in _set_partitions(taxa):
        k = len(blocks)
        phi = {t: i for i, block in enumerate(blocks) for t in block}
        for extra in range(max(0, k - 2) + 1):
            n = k + extra
            for edges in _shapes(k, extra):
                adj = [set() for _ in range(n)]
                for u, v in edges:
                    adj[u].add(v)
                    adj[v].add(u)
                if not all(_displays_literal(adj, phi, chi) for chi in cs.characters):
                    continue
                xt = XTree(n, edges, dict(phi))
                found.setdefault(xtree_canonical(xt), xt)
    return [found[key] for key in sorted(found)]
