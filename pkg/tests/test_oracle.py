import itertools

import pytest

from pmc_phylo import oracle
from pmc_phylo.characters import CharacterSet, FillWeight, indicator_weight, induced_fill_weight
from pmc_phylo.graph import Graph
from pmc_phylo.oracle import OracleCaps, OracleRefusal
from pmc_phylo.xtree import XTree

from conftest import GOLDEN, SPLIT, SPLIT_WEIGHTS, vids


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def test_chordal_graph_has_one_triangulation():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    fas = oracle.brute_minimal_triangulations(g)
    assert [fa.fill_edges for fa in fas] == [frozenset()]


def test_c4_triangulations(c4):
    _, cg = c4
    fas = oracle.brute_minimal_triangulations(cg.graph)
    assert sorted(len(fa) for fa in fas) == [1, 1]
    assert {fa.fill_edges for fa in fas} == {frozenset({vids(cg, "ab", "cd")}),
                                             frozenset({vids(cg, "ac", "bd")})}
    assert oracle.brute_mfi(cg.graph, indicator_weight(cg)) == 1


def test_split_has_eight_triangulations(split):
    cs, cg = split
    assert len(oracle.triangulations_by_separators(cg.graph)) == 8
    assert len(oracle.triangulations_by_elimination(cg.graph)) == 8
    assert len(oracle.brute_minimal_triangulations(cg.graph)) == 8
    assert oracle.brute_mfi(cg.graph, induced_fill_weight(cs, cg)) == 3


def test_small_graph_examples(c4):
    assert oracle.brute_minimal_separators(complete(4)) == set()
    assert oracle.brute_pmcs(complete(4)) == {(0, 1, 2, 3)}
    _, cg = c4
    assert len(oracle.brute_minimal_separators(cg.graph)) == 2
    assert len(oracle.brute_pmcs(cg.graph)) == 4
    assert oracle.brute_mfi(complete(3), FillWeight(complete(3))) == 0


def test_max_compat_examples():
    cs = CharacterSet.from_strings(["ab|cd", "ac|bd", "ad|bc"])
    best, winners = oracle.brute_max_compat(cs)
    assert best == 1 and sorted(winners) == [(0,), (1,), (2,)]
    cs = CharacterSet.from_strings(GOLDEN)
    assert oracle.brute_max_compat(cs) == (3, [(0, 1, 2)])
    cs = CharacterSet.from_strings(SPLIT, SPLIT_WEIGHTS)
    assert oracle.brute_max_compat(cs) == (3, [(1, 2, 3)])


def test_compatibility_oracle():
    assert oracle.brute_compatible(CharacterSet.from_strings(GOLDEN))
    assert not oracle.brute_compatible(CharacterSet.from_strings(SPLIT))
    assert not oracle.brute_compatible(CharacterSet.from_strings(["ab|cd", "ac|bd"]))


def test_caps_refuse_instead_of_truncating():
    with pytest.raises(OracleRefusal):
        oracle.brute_minimal_separators(Graph(11))
    with pytest.raises(OracleRefusal):
        oracle.brute_pmcs(Graph(5), OracleCaps(max_vertices=4))
    cs = CharacterSet.from_strings(["a|b"] * 7)
    with pytest.raises(OracleRefusal):
        oracle.brute_max_compat(cs)
    with pytest.raises(OracleRefusal):
        oracle.brute_perfect_phylogenies(CharacterSet.from_strings(["abc|def"]))


def test_caps_from_environment(monkeypatch):
    monkeypatch.setenv(oracle.CAP_ENV, "12")
    assert OracleCaps.from_env() == OracleCaps(12, 6, 16, 5)
    monkeypatch.setenv(oracle.CAP_ENV, "20,8")
    assert OracleCaps.from_env() == OracleCaps(20, 8, 20, 5)
    monkeypatch.setenv(oracle.CAP_ENV, "4,2,9,3")
    caps = OracleCaps.from_env()
    assert caps == OracleCaps(4, 2, 9, 3)
    with pytest.raises(OracleRefusal):
        oracle.brute_minimal_separators(Graph(5))
    monkeypatch.setenv(oracle.CAP_ENV, "lots")
    with pytest.raises(OracleRefusal):
        OracleCaps.from_env()
    monkeypatch.delenv(oracle.CAP_ENV)
    assert OracleCaps.from_env() == OracleCaps()


def test_perfect_phylogeny_enumeration():
    # one taxon: a single node; two taxa with a|b: only the edge
    assert len(oracle.brute_perfect_phylogenies(CharacterSet.from_strings(["a"]))) == 1
    trees = oracle.brute_perfect_phylogenies(CharacterSet.from_strings(["a|b"]))
    assert len(trees) == 1 and trees[0].num_nodes == 2
    # no characters on {a, b}: the single node and the edge
    assert len(oracle.brute_perfect_phylogenies(CharacterSet(("a", "b"), ()))) == 2
    # X-trees on three taxa: 1 node, 3 paths, 1 star, 3 two-node splits
    assert len(oracle.brute_perfect_phylogenies(CharacterSet(("a", "b", "c"), ()))) == 8
    assert oracle.brute_perfect_phylogenies(CharacterSet.from_strings(["ab|cd", "ac|bd"])) == []


def test_canonical_form_ignores_node_numbering():
    a = XTree(4, ((0, 3), (1, 3), (2, 3)), {"a": 0, "b": 1, "c": 2})
    b = XTree(4, ((0, 1), (0, 2), (0, 3)), {"a": 3, "b": 1, "c": 2})
    c = XTree(3, ((0, 1), (1, 2)), {"a": 0, "b": 1, "c": 2})
    assert oracle.xtree_canonical(a) == oracle.xtree_canonical(b) != oracle.xtree_canonical(c)
