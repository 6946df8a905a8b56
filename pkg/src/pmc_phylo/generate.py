"""Reproducible random character matrices.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister
MT19937), whose output for a given seed is fixed across platforms and
Python 3 releases.  Only ``random()``, ``randrange()`` and ``shuffle()``
are used.
"""
from __future__ import annotations

import random

from pmc_phylo.formats import MISSING, CharacterMatrix


def _random_tree(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Random unrooted tree on leaves ``0..n-1`` plus internal nodes, built
    by repeatedly attaching a new leaf to the middle of a random edge."""
    if n == 1:
        return []
    edges = [(0, 1)]
    nxt = n
    for leaf in range(2, n):
        a, b = edges.pop(rng.randrange(len(edges)))
        mid = nxt
        nxt += 1
        edges.extend([(a, mid), (mid, b), (mid, leaf)])
    return edges


def _split_states(rng: random.Random, n: int, edges, states: int) -> list[int]:
    """Leaf states from cutting ``states - 1`` random tree edges."""
    if not edges:
        return [0] * n
    cut = set()
    picks = list(range(len(edges)))
    rng.shuffle(picks)
    for i in picks[: max(0, states - 1)]:
        cut.add(edges[i])
    adj: dict[int, list[int]] = {}
    for e in edges:
        if e in cut:
            continue
        a, b = e
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    label: dict[int, int] = {}
    next_state = 0
    for leaf in range(n):
        if leaf in label:
            continue
        todo = [leaf]
        label[leaf] = next_state
        while todo:
            u = todo.pop()
            for w in adj.get(u, ()):
                if w not in label:
                    label[w] = next_state
                    todo.append(w)
        next_state += 1
    return [label[leaf] for leaf in range(n)]


def generate_matrix(taxa: int, chars: int, states: int = 2, missing: float = 0.0,
                    seed: int = 0, model: str = "uniform") -> CharacterMatrix:
    """Random ``taxa`` x ``chars`` matrix.

    ``uniform`` draws each state independently from ``0..states-1``;
    ``tree`` draws one random tree and derives every character from cutting
    ``states - 1`` of its edges, so the full-data characters are compatible.
    Each entry is then replaced by ``?`` with probability ``missing``.
    """
    if taxa < 1 or chars < 0 or states < 1:
        raise ValueError("need taxa >= 1, chars >= 0, states >= 1")
    if not 0.0 <= missing <= 1.0:
        raise ValueError("missing must lie in [0, 1]")
    rng = random.Random(seed)
    columns = []
    if model == "uniform":
        for _ in range(chars):
            columns.append([rng.randrange(states) for _ in range(taxa)])
    elif model == "tree":
        edges = _random_tree(rng, taxa)
        for _ in range(chars):
            columns.append(_split_states(rng, taxa, edges, states))
    else:
        raise ValueError(f"unknown model {model!r}")
    table = []
    for i in range(taxa):
        row = []
        for col in columns:
            row.append(MISSING if rng.random() < missing else str(col[i]))
        table.append(tuple(row))
    width = len(str(taxa))
    return CharacterMatrix(
        tuple(f"c{j + 1}" for j in range(chars)),
        tuple(f"t{i + 1:0{width}d}" for i in range(taxa)),
        tuple(table),
    )
