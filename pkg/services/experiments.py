"""Agreement experiments between the fast deciders and the exhaustive oracles."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from models.clustered_graph import ClusteredGraph
from models.cycle import CyclicClusteredCycle
from models.schemas import AgreementReport, EdgeBoundVerdict, Outcome
from services.canonical_drawing import dfs_circle_order, initial_parity_vector
from services.corpus import (
    random_clustered_graph,
    random_cyclic_cycle,
    random_embedded_instance,
    two_clustered_corpus,
)
from services.cycles import (
    generate_counterexample,
    is_cyclic_clustered,
    monotone_reduction_trace,
    winding_criterion,
    winding_number,
)
from services.embedding import NotCPlanar, preprocess_embedded
from services.ht_tester import test_ht
from services.matroids import MatroidPair, build_matroids, matroid_intersection
from services.normalizer import FaceSizeError, normalize_trace
from services.oracle import (
    BudgetExceededError,
    brute_force_embedded_saturator,
    brute_force_flat_cplanarity,
    brute_force_intersection_size,
    exact_chord_parity_vector,
)
from services.saturator import decide_embedded
from services.sinusoid import sinusoid_parity_vector
from services.structure import simplify
from services.switch_solver import build_system, solve
from settings import get_settings

logger = logging.getLogger(__name__)

# A check returns None on agreement and a description otherwise.
Check = Callable[[], Optional[str]]
Case = Tuple[str, Check]

COUNTEREXAMPLE_PAIRS: Tuple[Tuple[int, int], ...] = ((3, 3), (3, 5), (4, 3), (5, 3))
SINUSOID_PAIRS = frozenset({(3, 3), (3, 5), (5, 3)})
SMALLEST_COUNTEREXAMPLE_PHI = (3, 1, 2, 3, 1, 2, 3, 1, 2)
PERMUTATION_ROUNDS = 100


class ExperimentRunner:
    def __init__(self, workers: int = 4) -> None:
        self.executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="experiment")

    def _run_case(self, case: Case) -> Tuple[str, str, Optional[str]]:
        name, check = case
        try:
            return name, "ran", check()
        except (BudgetExceededError, FaceSizeError) as exc:
            return name, "refused", str(exc)

    def run(self, name: str, cases: Iterable[Case]) -> AgreementReport:
        report = AgreementReport(name=name)
        for case_name, status, detail in self.executor.map(self._run_case, cases):
            report.total += 1
            if status == "refused":
                report.refused += 1
            elif detail is None:
                report.agreed += 1
            else:
                report.disagreements.append(f"{case_name}: {detail}")
                logger.warning("Experiment disagreement", extra={"instance": case_name, "reason": detail})
        logger.info(
            "Experiment finished",
            extra={
                "instance": name,
                "reason": f"{report.agreed}/{report.total} agreed, {report.refused} refused",
            },
        )
        return report

    def shutdown(self) -> None:
        self.executor.shutdown(wait=True)


@lru_cache
def build_default_runner() -> ExperimentRunner:
    return ExperimentRunner(workers=get_settings().workers)


def _runner(runner: Optional[ExperimentRunner]) -> ExperimentRunner:
    return runner if runner is not None else build_default_runner()


def unsolvable_under_permutations(g: ClusteredGraph, rng: np.random.Generator, rounds: int = PERMUTATION_ROUNDS) -> bool:
    """Re-solve the switch system of ``g`` with shuffled variable orders; True iff every order fails."""
    simple, _ = simplify(g)
    system = build_system(simple, initial_parity_vector(simple, dfs_circle_order(simple)))
    count = len(system.variables)
    return all(solve(system, [int(index) for index in rng.permutation(count)]) is None for _ in range(rounds))


def _two_clustered_check(g: ClusteredGraph, seed: int) -> Check:
    def check() -> Optional[str]:
        verdict = test_ht(g)
        expected = brute_force_flat_cplanarity(g)
        planar = verdict.outcome is Outcome.c_planar
        if planar != expected:
            return f"test_ht says {verdict.outcome.value}, oracle says {expected}"
        if not planar and simplify(g)[1] is EdgeBoundVerdict.passed:
            if not unsolvable_under_permutations(g, np.random.default_rng(seed)):
                return "a permuted variable order solved an unsolvable system"
        return None

    return check


def two_clustered_agreement(max_vertices: int = 6, runner: Optional[ExperimentRunner] = None) -> AgreementReport:
    cases = (
        (g.name or str(index), _two_clustered_check(g, index))
        for index, g in enumerate(two_clustered_corpus(max_vertices))
    )
    return _runner(runner).run(f"two-clustered n<={max_vertices}", cases)


def _embedded_check(seed: int, max_vertices: int) -> Case:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, max_vertices + 1))
    clusters = int(rng.integers(2, 4))
    g, m = random_embedded_instance(rng, n, clusters)

    def check() -> Optional[str]:
        verdict = decide_embedded(m, g.tree, name=g.name)
        expected = brute_force_embedded_saturator(m, g.tree)
        planar = verdict.outcome is Outcome.c_planar
        if planar != expected:
            return f"decide_embedded says {verdict.outcome.value}, oracle says {expected}"
        return None

    return f"seed{seed}-n{n}", check


def embedded_agreement(
    count: int = 200,
    seed: int = 0,
    max_vertices: int = 10,
    runner: Optional[ExperimentRunner] = None,
) -> AgreementReport:
    cases = (_embedded_check(seed + offset, max_vertices) for offset in range(count))
    return _runner(runner).run(f"embedded seed={seed}", cases)


def _parity_check(g: ClusteredGraph) -> Check:
    def check() -> Optional[str]:
        order = dfs_circle_order(g)
        fast = initial_parity_vector(g, order)
        exact = exact_chord_parity_vector(g, order)
        if fast != exact:
            return f"odd pairs {fast.odd_pairs()}, exact geometry gives {exact.odd_pairs()}"
        return None

    return check


def parity_geometry(
    count: int = 1000,
    seed: int = 0,
    max_vertices: int = 12,
    runner: Optional[ExperimentRunner] = None,
) -> AgreementReport:
    """Interleaving parities of the canonical drawing against rational segment intersection."""
    rng = np.random.default_rng(seed)
    cases: List[Case] = []
    for index in range(count):
        n = int(rng.integers(2, max_vertices + 1))
        m = int(rng.integers(n - 1, 2 * n + 1))
        g = random_clustered_graph(rng, n, m, int(rng.integers(1, 4)))
        cases.append((f"graph{index}-n{n}-m{m}", _parity_check(g)))
    return _runner(runner).run(f"parity-geometry seed={seed}", cases)


def _normalized_matroids(seed: int, max_vertices: int) -> Optional[Tuple[str, MatroidPair]]:
    """Matroids of a random embedded instance, or None when it is rejected before the matroid step."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, max_vertices + 1))
    g, m = random_embedded_instance(rng, n, int(rng.integers(2, 4)))
    preprocessed = preprocess_embedded(m, g.tree)
    if isinstance(preprocessed, NotCPlanar):
        return None
    try:
        normalization = normalize_trace(preprocessed, g.tree)
    except FaceSizeError:
        return None
    if normalization.rejection is not None:
        return None
    return f"seed{seed}-n{n}", build_matroids(normalization.map, g.tree)


def _matroid_check(matroids: MatroidPair) -> Check:
    def check() -> Optional[str]:
        size = len(matroids.ground)
        chosen = frozenset(matroid_intersection(size, matroids.first, matroids.second))
        if not (matroids.first(chosen) and matroids.second(chosen)):
            return f"elements {sorted(chosen)} are dependent in one of the matroids"
        best = brute_force_intersection_size(size, matroids.first, matroids.second)
        if len(chosen) != best:
            return f"intersection has {len(chosen)} elements, exhaustive maximum is {best}"
        return None

    return check


def matroid_exhaustive(
    count: int = 200,
    seed: int = 0,
    max_vertices: int = 10,
    runner: Optional[ExperimentRunner] = None,
) -> AgreementReport:
    """Matroid intersection against subset enumeration on ground sets drawn from the embedded corpus.

    Seeds whose instance is rejected before the matroid step add no case; ground sets above
    sixteen elements are refused by the enumeration.
    """
    built = (_normalized_matroids(seed + offset, max_vertices) for offset in range(count))
    cases = [(name, _matroid_check(matroids)) for name, matroids in filter(None, built)]
    return _runner(runner).run(f"matroid-exhaustive seed={seed}", cases)


def _winding_check(c: CyclicClusteredCycle) -> Check:
    def check() -> Optional[str]:
        before = winding_number(c)
        after = monotone_reduction_trace(c).winding
        return None if before == after else f"winding {before} became {after}"

    return check


def winding_invariance(
    count: int = 1000,
    seed: int = 0,
    max_n: int = 24,
    runner: Optional[ExperimentRunner] = None,
) -> AgreementReport:
    rng = np.random.default_rng(seed)
    cases: List[Case] = []
    for index in range(count):
        k = int(rng.choice([3, 4, 5]))
        n = int(rng.integers(3, max_n + 1))
        c = random_cyclic_cycle(rng, n, k)
        cases.append((f"cycle{index}-k{k}-n{n}", _winding_check(c)))
    return _runner(runner).run(f"winding seed={seed}", cases)


def _counterexample_check(k: int, r: int, samples: Optional[int]) -> Check:
    def check() -> Optional[str]:
        c = generate_counterexample(k, r)
        problems: List[str] = []
        if (k, r) == (3, 3) and c.phi != SMALLEST_COUNTEREXAMPLE_PHI:
            problems.append(f"phi {c.phi}")
        verdict = test_ht(c.to_clustered_graph(name=f"k{k}-r{r}"))
        if verdict.outcome is not Outcome.even_drawing_exists_inconclusive:
            problems.append(f"outcome {verdict.outcome.value}")
        if winding_criterion(c):
            problems.append("winding criterion accepts")
        if winding_number(c) != r:
            problems.append(f"winding {winding_number(c)}")
        if (k, r) in SINUSOID_PAIRS and not sinusoid_parity_vector(k, r, samples=samples).is_zero:
            problems.append("sinusoid drawing has odd independent pairs")
        return "; ".join(problems) or None

    return check


def counterexample_reproduction(
    pairs: Sequence[Tuple[int, int]] = COUNTEREXAMPLE_PAIRS,
    samples: Optional[int] = None,
    runner: Optional[ExperimentRunner] = None,
) -> AgreementReport:
    cases = [(f"k{k}-r{r}", _counterexample_check(k, r, samples)) for k, r in pairs]
    return _runner(runner).run("counterexamples", cases)


def _even_winding_cycles(k: int, max_n: int) -> Iterable[CyclicClusteredCycle]:
    for n in range(2 * k, max_n + 1):
        for steps in itertools.product((-1, 0, 1), repeat=n - 1):
            phi = [1]
            for step in steps:
                phi.append((phi[-1] - 1 + step) % k + 1)
            if (phi[0] - phi[-1]) % k not in (0, 1, k - 1):
                continue
            c = CyclicClusteredCycle(k=k, phi=tuple(phi))
            if not is_cyclic_clustered(c):
                continue
            winding = winding_number(c)
            if winding != 0 and winding % 2 == 0:
                yield c


def _even_drawing_probe(c: CyclicClusteredCycle) -> Check:
    def check() -> Optional[str]:
        verdict = test_ht(c.to_clustered_graph())
        if verdict.outcome is Outcome.even_drawing_exists_inconclusive:
            return None
        return f"no independently even drawing ({verdict.outcome.value})"

    return check


def even_winding_probe(k: int = 3, max_n: int = 8, runner: Optional[ExperimentRunner] = None) -> AgreementReport:
    """Cycles with even nonzero winding. ``agreed`` counts those admitting an independently even drawing.

    Nothing is asserted; disagreements here are observations.
    """
    cases = ((f"phi{''.join(map(str, c.phi))}", _even_drawing_probe(c)) for c in _even_winding_cycles(k, max_n))
    return _runner(runner).run(f"even-winding k={k}", cases)
