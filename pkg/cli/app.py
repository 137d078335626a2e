from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterator, Optional

import typer

from cli.config import CLIConfig, load_config
from cli.render import (
    echo_heading,
    echo_key_values,
    render_reduction,
    render_report,
    render_validation,
    render_verdict,
)
from logging_config import configure_logging
from models.combinatorial_map import CombinatorialMap, EmbeddingError
from services.canonical_drawing import dfs_circle_order, render_svg, render_text
from services.cycles import cycle_from_graph, generate_counterexample, monotone_reduction_trace, winding_number
from services.embedding import faces, map_from_graph
from services.experiments import (
    ExperimentRunner,
    counterexample_reproduction,
    embedded_agreement,
    even_winding_probe,
    matroid_exhaustive,
    parity_geometry,
    two_clustered_agreement,
    winding_invariance,
)
from services.ht_tester import test_ht
from services.normalizer import FaceSizeError
from services.oracle import BudgetExceededError, brute_force_embedded_saturator, brute_force_flat_cplanarity
from services.saturator import decide_embedded
from services.sinusoid import ResolutionError, sinusoid_crossings
from services.structure import InvalidInstanceError, validate
from storage.instance_format import Instance, InstanceFormatError, load_instance, save_instance, serialize_instance


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class DrawingFormat(str, Enum):
    svg = "svg"
    text = "text"


class ExperimentName(str, Enum):
    two_clustered = "two-clustered"
    embedded = "embedded"
    winding = "winding"
    counterexamples = "counterexamples"
    even_winding = "even-winding"
    parity_geometry = "parity-geometry"
    matroid_exhaustive = "matroid-exhaustive"


@dataclass
class CLIState:
    config: CLIConfig


app = typer.Typer(
    help="Clustered planarity: Hanani-Tutte testing, embedded saturators and winding analysis.",
    context_settings={"help_option_names": ["-h", "--help"]},
)

_INSTANCE_HELP = "Path to a JSON instance file."


def _get_state(ctx: typer.Context) -> CLIState:
    state = ctx.obj
    if not isinstance(state, CLIState):
        raise typer.Exit(code=1, message="CLI state is uninitialized.")
    return state


@contextmanager
def _reporting_errors() -> Iterator[None]:
    """Refusals exit with 3, input errors with 1."""
    try:
        yield
    except (BudgetExceededError, FaceSizeError, ResolutionError) as exc:
        typer.secho(f"Refused: {exc}", err=True, fg=typer.colors.YELLOW)
        raise typer.Exit(code=3) from exc
    except (InstanceFormatError, InvalidInstanceError, EmbeddingError, ValueError, KeyError) as exc:
        typer.secho(f"Error: {exc}", err=True, fg=typer.colors.RED)
        raise typer.Exit(code=1) from exc


def _embedding_of(instance: Instance) -> CombinatorialMap:
    if not instance.embedded:
        raise InvalidInstanceError("The instance has no embedding section.")
    assert instance.rotations is not None
    return map_from_graph(instance.graph, instance.rotations, instance.outer)


@app.callback()
def main(
    ctx: typer.Context,
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level (defaults to LOG_LEVEL or INFO)."),
    budget: Optional[int] = typer.Option(None, "--budget", help="Enumeration budget for the brute-force oracles."),
    samples: Optional[int] = typer.Option(None, "--samples", help="Samples per arc for the sinusoid check."),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker threads for numeric checks and experiments."),
) -> None:
    """Entry point for the CLI."""
    config = load_config(log_level=log_level, budget=budget, samples=samples, workers=workers)
    configure_logging(config.log_level)
    ctx.obj = CLIState(config=config)


@app.command("validate")
def validate_command(
    file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True, help=_INSTANCE_HELP),
) -> None:
    """Check the structural invariants of an instance (and its embedding, when present)."""
    with _reporting_errors():
        instance = load_instance(file)
        report = validate(instance.graph)
        if report.valid and instance.embedded:
            try:
                faces(_embedding_of(instance))
            except EmbeddingError as exc:
                report.problems.append(f"embedding: {exc}")
    render_validation(report)
    if not report.valid:
        raise typer.Exit(code=1)


@app.command("test-ht")
def test_ht_command(
    file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True, help=_INSTANCE_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.text, "--format", help="Verdict output format."),
) -> None:
    """Run the Hanani-Tutte test and report the verdict with its soundness tier."""
    with _reporting_errors():
        verdict = test_ht(load_instance(file).graph)
    render_verdict(verdict, output_format.value)


@app.command("gen-counterexample")
def gen_counterexample_command(
    k: int = typer.Argument(..., help="Number of clusters (at least 3)."),
    r: int = typer.Argument(..., help="Winding number (odd, at least 1)."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the instance here instead of stdout."),
) -> None:
    """Generate the cyclic-clustered cycle with winding r that has an even clustered drawing."""
    with _reporting_errors():
        graph = generate_counterexample(k, r).to_clustered_graph(name=f"counterexample-k{k}-r{r}")
    if out is None:
        typer.echo(serialize_instance(graph), nl=False)
        return
    save_instance(out, graph)
    typer.secho(f"Wrote {out}", fg=typer.colors.GREEN)


@app.command("winding")
def winding_command(
    file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True, help=_INSTANCE_HELP),
) -> None:
    """Winding number of a cyclic-clustered cycle, with its monotone reduction."""
    with _reporting_errors():
        cycle = cycle_from_graph(load_instance(file).graph)
        winding = winding_number(cycle)
        reduction = monotone_reduction_trace(cycle)
    render_reduction(winding, reduction)


@app.command("test-embedded")
def test_embedded_command(
    file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True, help=_INSTANCE_HELP),
    output_format: OutputFormat = typer.Option(OutputFormat.text, "--format", help="Verdict output format."),
) -> None:
    """Decide c-planarity of an embedded flat instance with faces of at most five vertices."""
    with _reporting_errors():
        instance = load_instance(file)
        verdict = decide_embedded(_embedding_of(instance), instance.graph.tree, name=instance.graph.name)
    render_verdict(verdict, output_format.value)


@app.command("oracle")
def oracle_command(
    ctx: typer.Context,
    file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True, help=_INSTANCE_HELP),
    embedded: bool = typer.Option(False, "--embedded", help="Search saturators in the given embedding."),
    budget: Optional[int] = typer.Option(None, "--budget", help="Override the enumeration budget."),
) -> None:
    """Exhaustive c-planarity check for small instances; prints true or false, or refuses."""
    state = _get_state(ctx)
    limit = budget if budget is not None and budget > 0 else state.config.budget
    with _reporting_errors():
        instance = load_instance(file)
        if embedded:
            answer = brute_force_embedded_saturator(_embedding_of(instance), instance.graph.tree, budget=limit)
        else:
            answer = brute_force_flat_cplanarity(instance.graph, budget=limit)
    typer.echo("true" if answer else "false")


@app.command("render")
def render_command(
    file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True, help=_INSTANCE_HELP),
    output_format: DrawingFormat = typer.Option(DrawingFormat.svg, "--format", help="Drawing output format."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the drawing here instead of stdout."),
) -> None:
    """Draw the canonical circular clustered drawing."""
    with _reporting_errors():
        graph = load_instance(file).graph
        order = dfs_circle_order(graph)
        document = render_svg(graph, order) if output_format is DrawingFormat.svg else render_text(graph, order)
    if out is None:
        typer.echo(document, nl=False)
        return
    out.write_text(document, encoding="utf-8")
    typer.secho(f"Wrote {out}", fg=typer.colors.GREEN)


@app.command("sinusoid")
def sinusoid_command(
    ctx: typer.Context,
    k: int = typer.Argument(..., help="Number of clusters (at least 3)."),
    r: int = typer.Argument(..., help="Winding number (odd, at least 1)."),
    samples: Optional[int] = typer.Option(None, "--samples", help="Override samples per arc."),
) -> None:
    """Count crossings of the sinusoid drawing and report the independent-pair parities."""
    state = _get_state(ctx)
    with _reporting_errors():
        counts = sinusoid_crossings(k, r, samples=samples or state.config.samples, workers=state.config.workers)
    odd = [pair for pair, count in counts.items() if count % 2]
    echo_heading(f"Sinusoid k={k} r={r}")
    echo_key_values(
        [
            ("independent pairs", len(counts)),
            ("crossings", sum(counts.values())),
            ("odd pairs", len(odd)),
            ("independently even", "yes" if not odd else "no"),
        ]
    )
    for a, b in odd:
        typer.echo(f"  - e{a}/e{b}: {counts[(a, b)]}")


@app.command("experiment")
def experiment_command(
    ctx: typer.Context,
    name: ExperimentName = typer.Argument(..., help="Which agreement experiment to run."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for random corpora."),
    count: Optional[int] = typer.Option(None, "--count", help="Number of random instances (each experiment has its own default)."),
    max_vertices: Optional[int] = typer.Option(None, "--max-vertices", help="Largest instance size."),
    k: int = typer.Option(3, "--k", help="Cluster count for the even-winding probe."),
    workers: Optional[int] = typer.Option(None, "--workers", help="Override worker threads."),
) -> None:
    """Compare the deciders with the brute-force oracles over a corpus."""
    state = _get_state(ctx)
    config = state.config
    runner = ExperimentRunner(workers=workers if workers and workers > 0 else config.workers)
    start_seed = seed if seed is not None and seed >= 0 else config.seed
    sized = {"count": count} if count is not None and count > 0 else {}
    try:
        with _reporting_errors():
            if name is ExperimentName.two_clustered:
                report = two_clustered_agreement(max_vertices or 6, runner=runner)
            elif name is ExperimentName.embedded:
                report = embedded_agreement(seed=start_seed, max_vertices=max_vertices or 10, runner=runner, **sized)
            elif name is ExperimentName.winding:
                report = winding_invariance(seed=start_seed, runner=runner, **sized)
            elif name is ExperimentName.counterexamples:
                report = counterexample_reproduction(samples=config.samples, runner=runner)
            elif name is ExperimentName.parity_geometry:
                report = parity_geometry(seed=start_seed, max_vertices=max_vertices or 12, runner=runner, **sized)
            elif name is ExperimentName.matroid_exhaustive:
                report = matroid_exhaustive(seed=start_seed, max_vertices=max_vertices or 10, runner=runner, **sized)
            else:
                report = even_winding_probe(k, max_vertices or 2 * k + 2, runner=runner)
    finally:
        runner.shutdown()
    render_report(report)
