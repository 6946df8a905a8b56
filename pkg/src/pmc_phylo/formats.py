"""Character matrices (CSV), weight files, Newick and DOT output."""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from fractions import Fraction

from pmc_phylo.characters import CharacterSet, ColoredGraph, Number
from pmc_phylo.graph import FillAssignment
from pmc_phylo.xtree import XTree

MISSING = "?"


class FormatError(ValueError):
    """Malformed input; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class CharacterMatrix:
    """Rectangular taxon-by-character table of state symbols (``?`` missing)."""

    names: tuple[str, ...]
    taxa: tuple[str, ...]
    states: tuple[tuple[str, ...], ...]
    taxon_header: str = "taxon"

    def to_character_set(self, weights=None) -> CharacterSet:
        chars = []
        for j in range(len(self.names)):
            cells: dict[str, list[str]] = {}
            for taxon, row in zip(self.taxa, self.states):
                if row[j] != MISSING:
                    cells.setdefault(row[j], []).append(taxon)
            chars.append(tuple(tuple(c) for c in cells.values()))
        return CharacterSet(self.taxa, tuple(chars), self.names, weights)

    @classmethod
    def from_character_set(cls, cs: CharacterSet) -> "CharacterMatrix":
        index = {t: i for i, t in enumerate(cs.taxa)}
        table = [[MISSING] * len(cs.characters) for _ in cs.taxa]
        for j, chi in enumerate(cs.characters):
            for s, cell in enumerate(chi):
                for t in cell:
                    table[index[t]][j] = str(s)
        return cls(cs.names, cs.taxa, tuple(tuple(r) for r in table))


def parse_matrix(text: str) -> CharacterMatrix:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = next(csv.reader([line]))
        rows.append((lineno, [f.strip() for f in fields]))
    if not rows:
        raise FormatError("empty matrix")
    header_line, header = rows[0]
    width = len(header)
    names = tuple(header[1:])
    for col, name in enumerate(names, 2):
        if not name:
            raise FormatError("empty character name", header_line, col)
    if len(set(names)) != len(names):
        raise FormatError("duplicate character names", header_line)
    taxa = []
    states = []
    seen: dict[str, int] = {}
    for lineno, fields in rows[1:]:
        if len(fields) != width:
            raise FormatError(f"expected {width} fields, found {len(fields)}", lineno)
        taxon = fields[0]
        if not taxon:
            raise FormatError("empty taxon name", lineno, 1)
        if taxon in seen:
            raise FormatError(f"duplicate taxon {taxon!r} (first on line {seen[taxon]})", lineno, 1)
        seen[taxon] = lineno
        for col, sym in enumerate(fields[1:], 2):
            if not sym:
                raise FormatError("empty state symbol", lineno, col)
        taxa.append(taxon)
        states.append(tuple(fields[1:]))
    if not taxa:
        raise FormatError("matrix has no taxa", header_line)
    return CharacterMatrix(names, tuple(taxa), tuple(states), header[0] or "taxon")


def emit_matrix(matrix: CharacterMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([matrix.taxon_header, *matrix.names])
    for taxon, row in zip(matrix.taxa, matrix.states):
        writer.writerow([taxon, *row])
    return buf.getvalue()


def parse_character_matrix(text: str) -> CharacterSet:
    return parse_matrix(text).to_character_set()


_NUMBER = re.compile(r"^\+?(\d+)(?:/(\d+))?$")


def _parse_number(token: str, lineno: int) -> Number:
    m = _NUMBER.match(token)
    if not m:
        raise FormatError(f"malformed weight {token!r}; use an integer or p/q", lineno, 2)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise FormatError("zero denominator", lineno, 2)
    value = Fraction(num, den)
    if value <= 0:
        raise FormatError(f"weight must be positive, got {token!r}", lineno, 2)
    return value.numerator if value.denominator == 1 else value


def parse_weights(text: str, names) -> tuple[Number, ...]:
    """Parse ``name value`` lines; characters not listed weigh 1."""
    index = {n: i for i, n in enumerate(names)}
    weights: list[Number] = [1] * len(index)
    given: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError("expected 'character-name value'", lineno)
        name, token = parts
        if token.startswith("-"):
            raise FormatError(f"weight must be positive, got {token!r}", lineno, 2)
        if name not in index:
            raise FormatError(f"unknown character {name!r}", lineno, 1)
        if name in given:
            raise FormatError(f"weight for {name!r} given twice", lineno, 1)
        given.add(name)
        weights[index[name]] = _parse_number(token, lineno)
    return tuple(weights)


_PLAIN = re.compile(r"^[^\s()\[\]':;,+]+$")


def _quote(label: str) -> str:
    if _PLAIN.match(label):
        return label
    return "'" + label.replace("'", "''") + "'"


def emit_newick(xt: XTree) -> str:
    """Newick string rooted at a centre of the tree.

    Co-located taxa are joined with ``+``; children are ordered by their
    Newick text, so output is deterministic.
    """
    adj = xt.adjacency()
    names = ["+".join(_quote(t) for t in ls) for ls in xt.labels()]
    root = _center(adj, names)

    def render(v: int, parent: int) -> str:
        kids = sorted(render(w, v) for w in adj[v] if w != parent)
        return (f"({','.join(kids)})" if kids else "") + names[v]

    return render(root, -1) + ";"


def _center(adj: list[set[int]], names: list[str]) -> int:
    """A centre of the tree (ties go to the smaller label, then node id)."""
    n = len(adj)
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return min(layer, key=lambda v: (names[v], v))


PALETTE = (
    "lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
    "lightcyan", "wheat", "thistle", "aquamarine", "lightgray", "peachpuff",
)


def emit_dot(cg: ColoredGraph, fa: FillAssignment | None = None, names=None) -> str:
    """DOT text for the partition intersection graph.

    Vertices read ``cell@character`` and are coloured by character; fill
    edges of ``fa`` are dashed.
    """
    if names is None:
        names = [f"c{i + 1}" for i in range(max(cg.color, default=-1) + 1)]
    lines = ["graph pig {", "  node [style=filled];"]
    for v, (_, ci) in enumerate(cg.labels):
        label = f"{cg.vertex_name(v)}@{names[ci]}".replace('"', '\\"')
        lines.append(f'  v{v} [label="{label}", fillcolor="{PALETTE[ci % len(PALETTE)]}"];')
    for u, v in cg.graph.edges():
        lines.append(f"  v{u} -- v{v};")
    if fa is not None:
        for u, v in sorted(fa.fill_edges):
            lines.append(f"  v{u} -- v{v} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
