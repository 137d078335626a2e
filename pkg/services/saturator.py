"""c-planarity of embedded flat clustered graphs whose faces have at most five incident vertices."""

from __future__ import annotations

import logging
import time

from models.clustered_graph import ClusterTree
from models.combinatorial_map import CombinatorialMap
from models.schemas import Diagnostics, Method, Outcome, Tier, Verdict
from services.embedding import NotCPlanar, faces, preprocess_embedded
from services.matroids import build_matroids, deficient_clusters, matroid_intersection
from services.normalizer import check_face_sizes, normalize_trace

logger = logging.getLogger(__name__)


def _elapsed_ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def _rejected(rejection: NotCPlanar, diagnostics: Diagnostics, start: float) -> Verdict:
    diagnostics.reason = rejection.reason
    diagnostics.elapsed_ms = _elapsed_ms(start)
    return Verdict(
        outcome=Outcome.not_c_planar,
        tier=Tier.embedded_small_faces,
        method=Method.saturator,
        diagnostics=diagnostics,
    )


def decide_embedded(m: CombinatorialMap, tree: ClusterTree, name: str | None = None) -> Verdict:
    """Preprocess, normalize, then compare the largest common independent set with the target rank.

    Raises FaceSizeError when a face is incident to more than five vertices.
    """
    start = time.perf_counter()
    diagnostics = Diagnostics(vertices=len(m.vertices), edges=len(m.edges))

    preprocessed = preprocess_embedded(m, tree)
    if isinstance(preprocessed, NotCPlanar):
        verdict = _rejected(preprocessed, diagnostics, start)
        _log_verdict(name, verdict)
        return verdict

    check_face_sizes(preprocessed)
    normalization = normalize_trace(preprocessed, tree)
    diagnostics.merges = len(normalization.steps)
    if normalization.rejection is not None:
        verdict = _rejected(normalization.rejection, diagnostics, start)
        _log_verdict(name, verdict)
        return verdict

    normalized = normalization.map
    matroids = build_matroids(normalized, tree)
    diagnostics.faces = len(faces(normalized))
    diagnostics.ground_size = len(matroids.ground)
    diagnostics.target_rank = matroids.target

    deficient = deficient_clusters(normalized, tree, matroids.ground)
    if deficient:
        reason = NotCPlanar(reason=f"saturating edges cannot connect cluster {deficient[0]!r}")
        verdict = _rejected(reason, diagnostics, start)
        _log_verdict(name, verdict)
        return verdict

    chosen = matroid_intersection(len(matroids.ground), matroids.first, matroids.second)
    diagnostics.intersection_size = len(chosen)
    planar = len(chosen) == matroids.target
    if not planar:
        diagnostics.reason = "no saturator: the largest common independent set is below the target rank"
    diagnostics.elapsed_ms = _elapsed_ms(start)
    verdict = Verdict(
        outcome=Outcome.c_planar if planar else Outcome.not_c_planar,
        tier=Tier.embedded_small_faces,
        method=Method.saturator,
        witness=[matroids.ground[element].label for element in chosen] if planar else None,
        diagnostics=diagnostics,
    )
    _log_verdict(name, verdict)
    return verdict


def _log_verdict(name: str | None, verdict: Verdict) -> None:
    logger.info(
        "Saturator verdict",
        extra={
            "instance": name,
            "vertex_count": verdict.diagnostics.vertices,
            "edge_count": verdict.diagnostics.edges,
            "outcome": verdict.outcome.value,
            "tier": verdict.tier.value,
            "reason": verdict.diagnostics.reason,
            "elapsed_ms": verdict.diagnostics.elapsed_ms,
        },
    )
