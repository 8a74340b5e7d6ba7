"""Exact j-component census of an explicit hypergraph via union-find.

Two j-sets are in the same j-component when a chain of edges connects
them, consecutive edges sharing at least j vertices. The census unions
the C(k, j) j-sets inside every edge, so it covers all C(n, j) j-sets,
including the isolated ones (components of size 1 with 0 edges).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .combin import binomial
from .sampling import EdgeSet


@dataclass
class ComponentCensus:
    """Full partition of the j-sets of an explicit hypergraph."""

    n: int
    k: int
    j: int
    roots: np.ndarray  # component root for each j-set rank
    sizes: np.ndarray  # j-sets per component, indexed like comp_ids
    comp_edges: np.ndarray  # edges per component, indexed like comp_ids
    comp_ids: np.ndarray  # root rank of each component, sizes descending

    @property
    def n_components(self) -> int:
        return len(self.comp_ids)

    def ordered_sizes(self) -> np.ndarray:
        """Component sizes, largest first."""
        return self.sizes

    def largest_two(self) -> tuple[int, int]:
        """(L1, L2): sizes of the two largest components (L2 = 0 if unique)."""
        first = int(self.sizes[0]) if len(self.sizes) else 0
        second = int(self.sizes[1]) if len(self.sizes) > 1 else 0
        return first, second

    def count_in_large(self, threshold: float) -> int:
        """Total j-sets lying in components of size >= threshold."""
        return int(self.sizes[self.sizes >= threshold].sum())

    def members(self, comp_id: int) -> np.ndarray:
        """Sorted j-set ranks of one component."""
        return np.flatnonzero(self.roots == comp_id).astype(np.int64)

    def is_tree(self, idx: int) -> bool:
        """Is component `idx` (by descending-size position) a hypertree?

        A j-component with e edges is a hypertree exactly when its size is
        e * (C(k, j) - 1) + 1: each edge beyond the root contributes all
        of its non-parent j-sets as fresh ones.
        """
        litter = binomial(self.k, self.j) - 1
        return int(self.sizes[idx]) == litter * int(self.comp_edges[idx]) + 1

    def classify_trees(self) -> np.ndarray:
        """Boolean hypertree flag per component (descending-size order)."""
        litter = binomial(self.k, self.j) - 1
        return self.sizes == litter * self.comp_edges + 1

    def write_csv(self, path: str | Path) -> None:
        """One row per component: component_id, size, edges, is_tree."""
        trees = self.classify_trees()
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["component_id", "size", "edges", "is_tree"])
            for i in range(self.n_components):
                writer.writerow(
                    [int(self.comp_ids[i]), int(self.sizes[i]),
                     int(self.comp_edges[i]), int(trees[i])]
                )


def bfs_partition(edge_set: EdgeSet, j: int) -> np.ndarray:
    """Partition j-sets by repeated BFS sweeps; label = smallest member rank.

    Independent of the union-find path, so the two partitions cross-check
    each other. Only practical at small C(n, j).
    """
    from .combin import Params
    from .exploration import bfs_component

    n, k = edge_set.n, edge_set.k
    n_jsets = binomial(n, j)
    params = Params(n, k, j, 0.0, 0.0)  # p unused with a presampled edge set
    labels = np.full(n_jsets, -1, dtype=np.int64)
    for root in range(n_jsets):
        if labels[root] >= 0:
            continue
        state = bfs_component(params, root, edge_set=edge_set)
        labels[state.discovered()] = root
    return labels


def census(edge_set: EdgeSet, j: int) -> ComponentCensus:
    """Partition all C(n, j) j-sets into j-components of the given hypergraph."""
    n, k = edge_set.n, edge_set.k
    if not 1 <= j < k:
        raise ValueError("need 1 <= j < k")
    roots, comp_edges = kernels.census_kernel(n, k, j, edge_set.ranks)
    comp_ids, sizes = np.unique(roots, return_counts=True)
    order = np.lexsort((comp_ids, -sizes))
    comp_ids = comp_ids[order]
    sizes = sizes[order].astype(np.int64)
    edges_per = comp_edges[comp_ids]
    assert sizes.sum() == binomial(n, j)
    return ComponentCensus(n, k, j, roots, sizes, edges_per, comp_ids)
