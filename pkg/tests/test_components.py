"""Union-find census: partition correctness, totals, tree classification."""

import numpy as np
import pytest

from hygiant.combin import Params, binomial, rank_subset
from hygiant.components import bfs_partition, census
from hygiant.sampling import EdgeSet, sample_edge_set


def edge_set_from_vertex_edges(n, k, edges):
    ranks = np.array([rank_subset(sorted(e)) for e in edges], dtype=np.int64)
    return EdgeSet(n, k, ranks)


class TestCensusBasics:
    def test_empty_graph_all_singletons(self):
        cs = census(EdgeSet(8, 3, np.empty(0, dtype=np.int64)), 2)
        assert cs.n_components == binomial(8, 2)
        assert np.all(cs.sizes == 1)
        assert np.all(cs.classify_trees())

    def test_single_edge(self):
        cs = census(edge_set_from_vertex_edges(8, 3, [[0, 1, 2]]), 2)
        l1, l2 = cs.largest_two()
        assert l1 == 3 and l2 == 1
        assert cs.is_tree(0)

    def test_sizes_sum_to_all_jsets(self):
        for seed in range(5):
            p = Params(12, 3, 2, 0.05, 0.0)
            cs = census(sample_edge_set(p, seed), 2)
            assert cs.sizes.sum() == binomial(12, 2)

    def test_count_in_large_edges(self):
        cs = census(edge_set_from_vertex_edges(8, 3, [[0, 1, 2]]), 2)
        assert cs.count_in_large(1) == binomial(8, 2)
        assert cs.count_in_large(binomial(8, 2) + 1) == 0
        assert cs.count_in_large(2) == 3


class TestTreeClassification:
    def test_two_disjoint_edges_are_trees(self):
        cs = census(edge_set_from_vertex_edges(10, 3, [[0, 1, 2], [3, 4, 5]]), 2)
        trees = cs.classify_trees()
        big = cs.sizes == 3
        assert np.all(trees[big])

    def test_shared_jset_pair_not_tree(self):
        # k=4, j=2: edges {0,1,2,3} and {0,1,2,4} share three 2-sets, so the
        # combined component has 2 edges but only 9 < 2*5 + 1 j-sets
        cs = census(
            edge_set_from_vertex_edges(8, 4, [[0, 1, 2, 3], [0, 1, 2, 4]]), 2
        )
        assert not cs.is_tree(0)
        assert cs.largest_two()[0] == 9

    def test_chain_of_edges_tree(self):
        # k=3, j=2 edges sharing exactly one 2-set each form a hypertree
        cs = census(edge_set_from_vertex_edges(10, 3, [[0, 1, 2], [1, 2, 3]]), 2)
        assert cs.largest_two()[0] == 5
        assert cs.is_tree(0)


class TestBfsEquivalence:
    @pytest.mark.parametrize("n,k,j", [(10, 3, 1), (10, 3, 2), (9, 4, 2), (9, 4, 3)])
    def test_partitions_agree(self, n, k, j):
        for seed in range(8):
            p = Params(n, k, j, 0.08, 0.0)
            es = sample_edge_set(p, seed)
            cs = census(es, j)
            labels = bfs_partition(es, j)
            # same partition iff label vectors induce the same equivalence
            by_root = {}
            for idx, root in enumerate(cs.roots):
                by_root.setdefault(int(root), set()).add(idx)
            by_label = {}
            for idx, label in enumerate(labels):
                by_label.setdefault(int(label), set()).add(idx)
            assert set(map(frozenset, by_root.values())) == set(
                map(frozenset, by_label.values())
            )


class TestCsv:
    def test_roundtrip(self, tmp_path):
        cs = census(edge_set_from_vertex_edges(8, 3, [[0, 1, 2]]), 2)
        path = tmp_path / "census.csv"
        cs.write_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "component_id,size,edges,is_tree"
        first = lines[1].split(",")
        assert first[1] == "3" and first[2] == "1" and first[3] == "1"
        assert len(lines) == 1 + cs.n_components
