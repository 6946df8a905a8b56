"""Shared instances and helpers for the test suite."""
from __future__ import annotations

import random

import pytest

from pmc_phylo.characters import CharacterSet, ColoredGraph, build_pig
from pmc_phylo.graph import Graph, is_chordal
from pmc_phylo.pmc import pmc_bound_holds

GOLDEN = ["abcdef|gh|ij|kl", "ag|dj|fl", "bh|ci|ek"]
SPLIT = ["abcdef|gh|ij|kl", "ag|bh", "ci|dj", "ek|fl"]
SPLIT_WEIGHTS = (2, 1, 1, 1)
TWO_STATE_C4 = ["ab|cd", "ac|bd"]

GOLDEN_CSV = """taxon,chi1,chi2,chi3
a,0,0,?
b,0,?,0
c,0,?,1
d,0,1,?
e,0,?,2
f,0,2,?
g,1,0,?
h,1,?,0
i,2,?,1
j,2,1,?
k,3,?,2
l,3,2,?
"""


def vid(cg: ColoredGraph, name: str, character: int | None = None) -> int:
    """Vertex of the cell spelled ``name`` (optionally of one character)."""
    hits = [v for v in range(cg.graph.n)
            if cg.vertex_name(v) == name and (character is None or cg.color[v] == character)]
    assert len(hits) == 1, f"{name!r} names {len(hits)} vertices"
    return hits[0]


def vids(cg: ColoredGraph, *names: str) -> tuple[int, ...]:
    return tuple(sorted(vid(cg, n) for n in names))


def pig_of(chars, weights=None, taxa=None) -> tuple[CharacterSet, ColoredGraph]:
    cs = CharacterSet.from_strings(chars, weights, taxa)
    return cs, build_pig(cs)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_characters(rng: random.Random, taxa: str, count: int, max_states: int = 3,
                      missing: float = 0.2) -> list[str]:
    """Random partial characters as ``"ab|cd"`` strings (empty ones dropped)."""
    chars = []
    for _ in range(count):
        states = rng.randint(2, max_states)
        cells: dict[int, str] = {}
        for t in taxa:
            if rng.random() >= missing:
                s = rng.randrange(states)
                cells[s] = cells.get(s, "") + t
        if cells:
            chars.append("|".join(cells[s] for s in sorted(cells)))
    return chars


def assert_witness(g: Graph, fw, res) -> None:
    """Chordal, minimal, weight equal to the value, and the PMC bound."""
    assert is_chordal(res.witness.graph())[0]
    assert sum((fw(u, v) for u, v in res.witness.fill_edges), 0) == res.value
    assert res.witness.is_minimal()


def assert_bound(g: Graph, seps, pmcs) -> None:
    assert pmc_bound_holds(g, seps, pmcs)


@pytest.fixture
def golden():
    return pig_of(GOLDEN)


@pytest.fixture
def split():
    return pig_of(SPLIT, SPLIT_WEIGHTS)


@pytest.fixture
def c4():
    return pig_of(TWO_STATE_C4)


# criterion number -> (passed, seconds, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, seconds, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  ({seconds:.2f} s)  {detail}")
