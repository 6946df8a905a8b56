"""Characters, the partition intersection graph and its fill weights."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from pmc_phylo.graph import Edge, FillAssignment, Graph, edge_key, iter_bits

Cell = tuple[str, ...]
Character = tuple[Cell, ...]
Number = int | Fraction


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterSet:
    """Taxa, characters (each a tuple of disjoint cells) and optional weights.

    Cells list their taxa in taxon order.  ``weights`` is aligned with
    ``characters`` and holds exact positive numbers.
    """

    taxa: tuple[str, ...]
    characters: tuple[Character, ...]
    names: tuple[str, ...] = ()
    weights: tuple[Number, ...] | None = None

    def __post_init__(self):
        order = {t: i for i, t in enumerate(self.taxa)}
        if len(order) != len(self.taxa):
            raise CharacterError("duplicate taxon names")
        canon = []
        for ci, chi in enumerate(self.characters):
            seen: set[str] = set()
            cells = []
            for cell in chi:
                if not cell:
                    raise CharacterError(f"character {ci} has an empty cell")
                for t in cell:
                    if t not in order:
                        raise CharacterError(f"character {ci} uses unknown taxon {t!r}")
                    if t in seen:
                        raise CharacterError(f"character {ci} has overlapping cells at taxon {t!r}")
                    seen.add(t)
                cells.append(tuple(sorted(set(cell), key=order.__getitem__)))
            canon.append(tuple(cells))
        object.__setattr__(self, "characters", tuple(canon))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"c{i + 1}" for i in range(len(canon))))
        elif len(self.names) != len(canon):
            raise CharacterError("one name per character required")
        if self.weights is not None:
            if len(self.weights) != len(canon):
                raise CharacterError("one weight per character required")
            for w in self.weights:
                if not isinstance(w, Rational) or w <= 0:
                    raise CharacterError(f"weights must be positive exact numbers, got {w!r}")

    @classmethod
    def from_strings(cls, chars: Sequence[str], weights: Sequence[Number] | None = None,
                     taxa: Iterable[str] | None = None) -> "CharacterSet":
        """Build from compact notation such as ``"abcdef|gh|ij|kl"``.

        Each taxon is a single character of the string.
        """
        parsed = [tuple(tuple(cell) for cell in s.split("|") if cell) for s in chars]
        if taxa is None:
            taxa = sorted({t for chi in parsed for cell in chi for t in cell})
        return cls(tuple(taxa), tuple(parsed), names=tuple(chars),
                   weights=None if weights is None else tuple(weights))

    def weight(self, i: int) -> Number:
        return 1 if self.weights is None else self.weights[i]

    def total_weight(self, indices: Iterable[int] | None = None) -> Number:
        if indices is None:
            indices = range(len(self.characters))
        return sum((self.weight(i) for i in indices), 0)

    def subset(self, indices: Sequence[int]) -> "CharacterSet":
        return CharacterSet(
            self.taxa,
            tuple(self.characters[i] for i in indices),
            names=tuple(self.names[i] for i in indices),
            weights=None if self.weights is None else tuple(self.weights[i] for i in indices),
        )

    def with_weights(self, weights: Sequence[Number] | None) -> "CharacterSet":
        return CharacterSet(self.taxa, self.characters, self.names,
                            None if weights is None else tuple(weights))

    def __len__(self) -> int:
        return len(self.characters)


@dataclass(frozen=True)
class ColoredGraph:
    """Partition intersection graph: vertex ``v`` is cell ``labels[v][0]`` of
    character ``labels[v][1]``; ``color[v]`` is that character index."""

    graph: Graph
    labels: tuple[tuple[Cell, int], ...]

    @property
    def color(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.labels)

    def vertices_of(self, character: int) -> list[int]:
        return [v for v, (_, c) in enumerate(self.labels) if c == character]

    def vertex_name(self, v: int) -> str:
        cell, _ = self.labels[v]
        sep = "" if all(len(t) == 1 for t in cell) else ","
        return sep.join(cell)


def build_pig(cs: CharacterSet) -> ColoredGraph:
    labels = [(cell, ci) for ci, chi in enumerate(cs.characters) for cell in chi]
    by_taxon: dict[str, list[int]] = {}
    for v, (cell, _) in enumerate(labels):
        for t in cell:
            by_taxon.setdefault(t, []).append(v)
    edges: set[Edge] = set()
    for verts in by_taxon.values():
        for i, u in enumerate(verts):
            for v in verts[i + 1:]:
                edges.add((u, v))
    return ColoredGraph(Graph(len(labels), edges), tuple(labels))


class FillWeight:
    """Non-negative weight on the potential fill edges of ``graph``.

    Only pairs with non-zero weight are stored; every other non-edge weighs 0.
    """

    def __init__(self, graph: Graph, weights: Mapping[Edge, Number] | None = None):
        self.graph = graph
        self._w: dict[Edge, Number] = {}
        for (u, v), w in (weights or {}).items():
            key = edge_key(u, v)
            if u == v or graph.has_edge(u, v):
                raise ValueError(f"{key} is not a potential fill edge")
            if w < 0:
                raise ValueError(f"negative fill weight on {key}")
            if w:
                self._w[key] = w
        # per-vertex (higher-endpoint bit, weight) lists for fast set sums
        self._row: list[list[tuple[int, Number]]] = [[] for _ in range(graph.n)]
        for (u, v), w in sorted(self._w.items()):
            self._row[u].append((1 << v, w))

    def __call__(self, u: int, v: int) -> Number:
        return self._w.get(edge_key(u, v), 0)

    def items(self):
        return self._w.items()

    def fill_of_mask(self, mask: int) -> Number:
        total = 0
        for u in iter_bits(mask):
            for bit, w in self._row[u]:
                if mask & bit:
                    total += w
        return total

    def scaled(self, factor: Number) -> "FillWeight":
        return FillWeight(self.graph, {e: w * factor for e, w in self._w.items()})


def _monochromatic_weight(cg: ColoredGraph, per_color) -> FillWeight:
    weights = {}
    g = cg.graph
    color = cg.color
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if color[u] == color[v] and not g.has_edge(u, v):
                weights[(u, v)] = per_color(color[u])
    return FillWeight(g, weights)


def indicator_weight(cg: ColoredGraph) -> FillWeight:
    """1 on monochromatic non-edges, 0 elsewhere."""
    return _monochromatic_weight(cg, lambda c: 1)


def induced_fill_weight(cs: CharacterSet, cg: ColoredGraph) -> FillWeight:
    """w(chi) on chi-monochromatic non-edges, 0 elsewhere."""
    if cs.weights is None:
        raise CharacterError("character weights are required")
    return _monochromatic_weight(cg, cs.weight)


def displayed_characters(cs: CharacterSet, cg: ColoredGraph, fa: FillAssignment) -> list[int]:
    """Indices of the characters broken by no fill edge of ``fa``."""
    color = cg.color
    broken = {color[u] for u, v in fa.fill_edges if color[u] == color[v]}
    return [i for i in range(len(cs.characters)) if i not in broken]


def weight_of_fill(fw: FillWeight, fa: FillAssignment) -> Number:
    return sum((fw(u, v) for u, v in fa.fill_edges), 0)

