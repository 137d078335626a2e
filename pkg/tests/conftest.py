from __future__ import annotations

import itertools

import pytest

from models.clustered_graph import ClusteredGraph, ClusterTree
from tests.builders import Embedded, embedded


def pytest_configure(config) -> None:
    config.addinivalue_line("markers", "slow: exhaustive corpus runs; deselect with -m 'not slow'")


@pytest.fixture()
def k4() -> ClusteredGraph:
    edges = list(itertools.combinations(range(1, 5), 2))
    return ClusteredGraph.build(range(1, 5), edges, ClusterTree.flat({"A": [1, 2], "B": [3, 4]}), name="k4")


@pytest.fixture()
def k4_pendants() -> ClusteredGraph:
    edges = list(itertools.combinations(range(1, 5), 2)) + [(1, 5), (2, 6), (3, 7), (4, 8)]
    tree = ClusterTree.flat({"A": [1, 2, 3, 4], "B": [5, 6, 7, 8]})
    return ClusteredGraph.build(range(1, 9), edges, tree, name="k4-pendants")


@pytest.fixture()
def alternating_square() -> Embedded:
    """4-cycle 1-2-3-4 with opposite corners clustered together; two faces."""
    return embedded(
        [(1, 2), (2, 3), (3, 4), (4, 1)],
        {1: [0, 3], 2: [0, 1], 3: [1, 2], 4: [2, 3]},
        {"A": [1, 3], "B": [2, 4]},
        name="alternating-square",
    )


@pytest.fixture()
def split_pendants() -> Embedded:
    """Triangle 1-2-3 with pendants 4 and 5 hanging into different faces, both in cluster A."""
    return embedded(
        [(1, 2), (2, 3), (1, 3), (1, 4), (1, 5)],
        {1: [4, 2, 3, 0], 2: [0, 1], 3: [1, 2], 4: [3], 5: [4]},
        {"A": [4, 5]},
        loose=[1, 2, 3],
        outer=(5, 4),
        name="split-pendants",
    )


@pytest.fixture()
def square_with_spur() -> Embedded:
    """4-cycle u-x-v-y (1-2-3-4) with a C vertex 5 hanging off x inside one face."""
    return embedded(
        [(1, 2), (2, 3), (3, 4), (4, 1), (2, 5)],
        {1: [0, 3], 2: [0, 4, 1], 3: [1, 2], 4: [2, 3], 5: [4]},
        {"C": [1, 3, 5], "D": [2, 4]},
        outer=(2, 0),
        name="square-with-spur",
    )
