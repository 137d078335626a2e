from __future__ import annotations

import numpy as np

from services.matroids import (
    SaturatingEdge,
    build_matroids,
    deficient_clusters,
    face_oracle,
    graphic_oracle,
    matroid_intersection,
)
from services.oracle import brute_force_intersection_size
from tests.builders import Embedded


def _intersect(ground):
    return matroid_intersection(len(ground), graphic_oracle(ground), face_oracle(ground))


def test_empty_ground_set() -> None:
    assert _intersect([]) == ()


def test_two_edges_in_one_face_give_one() -> None:
    ground = [SaturatingEdge(0, "A", 1, 2), SaturatingEdge(0, "A", 2, 3)]

    assert len(_intersect(ground)) == 1


def test_parallel_edges_in_different_faces_are_dependent() -> None:
    ground = [SaturatingEdge(0, "A", 1, 2), SaturatingEdge(1, "A", 1, 2)]
    independent = graphic_oracle(ground)

    assert independent(frozenset({0}))
    assert not independent(frozenset({0, 1}))
    assert len(_intersect(ground)) == 1


def test_face_oracle_allows_one_element_per_face() -> None:
    ground = [SaturatingEdge(0, "A", 1, 2), SaturatingEdge(0, "B", 3, 4), SaturatingEdge(1, "B", 3, 4)]
    independent = face_oracle(ground)

    assert independent(frozenset({0, 2}))
    assert not independent(frozenset({0, 1}))


def test_labels_name_face_and_pair() -> None:
    assert SaturatingEdge(3, "A", 1, 5).label == "f3:1-5"


def test_alternating_square_matroids(alternating_square: Embedded) -> None:
    g, m = alternating_square

    matroids = build_matroids(m, g.tree)
    chosen = matroid_intersection(len(matroids.ground), matroids.first, matroids.second)

    assert len(matroids.ground) == 4
    assert matroids.target == 2
    assert len(chosen) == 2
    assert len({matroids.ground[element].face for element in chosen}) == 2
    assert deficient_clusters(m, g.tree, matroids.ground) == []


def test_split_pendants_leave_cluster_deficient(split_pendants: Embedded) -> None:
    g, m = split_pendants

    matroids = build_matroids(m, g.tree)

    assert matroids.ground == ()
    assert matroids.target == 1
    assert deficient_clusters(m, g.tree, matroids.ground) == ["A"]


def test_intersection_size_matches_exhaustive_search() -> None:
    rng = np.random.default_rng(5)
    for _ in range(60):
        size = int(rng.integers(1, 11))
        ground = []
        for _ in range(size):
            u, v = sorted(int(value) for value in rng.choice(np.arange(1, 7), size=2, replace=False))
            cluster = "A" if u <= 3 else "B"
            ground.append(SaturatingEdge(int(rng.integers(0, 4)), cluster, u, v))
        first, second = graphic_oracle(ground), face_oracle(ground)

        chosen = matroid_intersection(len(ground), first, second)

        assert first(frozenset(chosen)) and second(frozenset(chosen))
        assert len(chosen) == brute_force_intersection_size(len(ground), first, second)
