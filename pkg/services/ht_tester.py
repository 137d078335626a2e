"""End-to-end Hanani-Tutte c-planarity test with an explicit soundness tier."""

from __future__ import annotations

import logging
import time

from models.clustered_graph import ClusteredGraph
from models.schemas import CAVEAT, Diagnostics, EdgeBoundVerdict, Method, Outcome, Tier, Verdict
from services.canonical_drawing import dfs_circle_order, initial_parity_vector
from services.structure import classify, simplify
from services.switch_solver import apply_switches, build_system, solve, solver_rank

logger = logging.getLogger(__name__)


def _tier_for(g: ClusteredGraph) -> Tier:
    classification = classify(g)
    if classification.two_clustered:
        return Tier.two_clustered
    if classification.c_connected:
        return Tier.c_connected
    return Tier.none


def test_ht(g: ClusteredGraph) -> Verdict:
    start = time.perf_counter()
    simple, bound = simplify(g)
    tier = _tier_for(simple)
    diagnostics = Diagnostics(vertices=len(simple.vertices), edges=len(simple.edges))

    if bound is EdgeBoundVerdict.failed:
        diagnostics.reason = "edge bound |E| < 3|V| failed after simplification"
        diagnostics.elapsed_ms = int((time.perf_counter() - start) * 1000)
        verdict = Verdict(
            outcome=Outcome.not_c_planar,
            tier=tier,
            method=Method.hanani_tutte,
            diagnostics=diagnostics,
        )
        _log_verdict(g, verdict)
        return verdict

    order = dfs_circle_order(simple)
    parity = initial_parity_vector(simple, order)
    system = build_system(simple, parity)
    witness = solve(system)

    diagnostics.independent_pairs = parity.dimension
    diagnostics.equations = system.equations
    diagnostics.active_equations = system.active_equations
    diagnostics.variables = len(system.variables)
    diagnostics.rank = solver_rank(system)
    diagnostics.edge_vertex_bound = len(simple.edges) * len(simple.vertices)

    if witness is None:
        outcome = Outcome.not_c_planar
        diagnostics.reason = "no allowed switch sequence makes the drawing independently even"
    else:
        if not apply_switches(parity, witness, system).is_zero:
            raise RuntimeError("Solver witness does not cancel the parity vector.")
        outcome = Outcome.c_planar if tier is not Tier.none else Outcome.even_drawing_exists_inconclusive

    diagnostics.elapsed_ms = int((time.perf_counter() - start) * 1000)
    verdict = Verdict(
        outcome=outcome,
        tier=tier,
        method=Method.hanani_tutte,
        witness=system.labels(witness) if witness is not None else None,
        diagnostics=diagnostics,
        caveat=CAVEAT if outcome is Outcome.even_drawing_exists_inconclusive else None,
    )
    _log_verdict(g, verdict)
    return verdict


# Not a pytest test function.
test_ht.__test__ = False  # type: ignore[attr-defined]


def _log_verdict(g: ClusteredGraph, verdict: Verdict) -> None:
    logger.info(
        "Hanani-Tutte verdict",
        extra={
            "instance": g.name,
            "vertex_count": len(g.vertices),
            "edge_count": len(g.edges),
            "outcome": verdict.outcome.value,
            "tier": verdict.tier.value,
            "equations": verdict.diagnostics.equations,
            "variables": verdict.diagnostics.variables,
            "elapsed_ms": verdict.diagnostics.elapsed_ms,
        },
    )
