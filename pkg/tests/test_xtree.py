import random

import pytest

from pmc_phylo.xtree import (
    XTree,
    displays,
    edge_distinguished,
    is_distinguished,
    is_phylogenetic,
    is_ternary,
    subtree_nodes,
    suppress_unlabelled,
)

from conftest import random_characters


def star(*taxa):
    """Unlabelled centre 0 with one leaf per taxon."""
    return XTree(len(taxa) + 1, tuple((0, i + 1) for i in range(len(taxa))),
                 {t: i + 1 for i, t in enumerate(taxa)})


def test_display_basics():
    t = star("a", "b", "c", "d")
    assert displays(t, [("a", "b", "c", "d")])
    assert displays(t, [("a",), ("b",)])
    assert not displays(t, [("a", "b"), ("c", "d")])
    path = XTree(3, ((0, 1), (1, 2)), {"a": 0, "b": 1, "c": 2})
    assert displays(path, [("a",), ("b", "c")])
    assert not displays(path, [("a", "c"), ("b",)])


def test_subtree_nodes():
    path = XTree(4, ((0, 1), (1, 2), (2, 3)), {"a": 0, "b": 3, "c": 1, "d": 2})
    assert subtree_nodes(path, ["a", "b"]) == {0, 1, 2, 3}
    assert subtree_nodes(path, ["c", "d"]) == {1, 2}
    assert subtree_nodes(path, []) == set()
    with pytest.raises(KeyError):
        subtree_nodes(path, ["z"])


def test_star_leaf_edges_are_distinguished():
    # every node, centre included, carries its own cell
    t = XTree(4, ((0, 1), (0, 2), (0, 3)), {"d": 0, "a": 1, "b": 2, "c": 3})
    chi = [("a",), ("b",), ("c",), ("d",)]
    for e in t.edges:
        assert edge_distinguished(t, e, chi)
        assert not displays(t.contract(e), chi)
    assert is_distinguished(t, [chi])
    # with an unlabelled centre a contracted leaf just moves onto the centre
    s = star("a", "b", "c")
    assert not edge_distinguished(s, (0, 1), chi[:3])
    assert displays(s.contract((0, 1)), chi[:3])


def test_edge_inside_one_cell_is_not_distinguished():
    path = XTree(3, ((0, 1), (1, 2)), {"a": 0, "b": 1, "c": 2})
    chi = [("a", "b"), ("c",)]
    assert not edge_distinguished(path, (0, 1), chi)
    assert edge_distinguished(path, (1, 2), chi)


def _random_xtree(rng, taxa):
    n = rng.randint(1, len(taxa) + 2)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    phi = {t: rng.randrange(n) for t in taxa}
    return suppress_unlabelled(n, edges, phi)


def test_distinguished_matches_contraction():
    """Reading distinguishing as 'endpoints in subtrees of two different
    cells' agrees with the contraction definition whenever T displays the
    character."""
    rng = random.Random(31)
    checked = 0
    for _ in range(3000):
        taxa = "abcdef"[: rng.randint(2, 6)]
        t = _random_xtree(rng, taxa)
        drawn = random_characters(rng, taxa, 1, 4, 0.2)
        if not drawn:
            continue
        chi = [tuple(c) for c in drawn[0].split("|")]
        if not displays(t, chi):
            continue
        for e in t.edges:
            checked += 1
            assert edge_distinguished(t, e, chi) == (not displays(t.contract(e), chi))
    assert checked > 500


def test_suppress_unlabelled():
    # path 0-1-2-3 with labels only at the ends, plus an unlabelled leaf 4 on 1
    t = suppress_unlabelled(5, [(0, 1), (1, 2), (2, 3), (1, 4)], {"a": 0, "b": 3})
    assert t.num_nodes == 2 and t.edges == ((0, 1),)
    assert t.is_valid()
    # labelled degree-2 nodes stay
    t = suppress_unlabelled(3, [(0, 1), (1, 2)], {"a": 0, "b": 1, "c": 2})
    assert t.num_nodes == 3


def test_ternary_and_phylogenetic():
    assert is_ternary(star("a", "b", "c")) and is_phylogenetic(star("a", "b", "c"))
    assert not is_ternary(star("a", "b", "c", "d"))
    path = XTree(3, ((0, 1), (1, 2)), {"a": 0, "b": 1, "c": 2})
    assert not is_ternary(path) and not is_phylogenetic(path)
    pair = XTree(2, ((0, 1),), {"a": 0, "b": 0, "c": 1, "d": 1})
    assert is_ternary(pair) and not is_phylogenetic(pair)
    labelled_centre = XTree(4, ((0, 1), (0, 2), (0, 3)), {"a": 1, "b": 2, "c": 3, "d": 0})
    assert is_ternary(labelled_centre) and not is_phylogenetic(labelled_centre)


def test_contract_and_validity():
    t = star("a", "b", "c")
    assert t.is_valid()
    merged = t.contract((0, 1))
    assert merged.num_nodes == 3
    assert merged.degree(merged.phi["a"]) == 2
    assert merged.phi["b"] != merged.phi["a"] != merged.phi["c"]
    with pytest.raises(ValueError):
        t.contract((1, 2))
    assert not XTree(3, ((0, 1),), {"a": 0}).is_valid()
    assert not XTree(3, ((0, 1), (1, 2)), {"a": 0, "c": 2}).is_valid()
