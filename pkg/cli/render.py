from __future__ import annotations

from typing import Any, Iterable

import typer

from models.schemas import AgreementReport, ValidationReport, Verdict
from services.cycles import MonotoneReduction


def echo_heading(text: str) -> None:
    typer.secho(text, bold=True)


def echo_key_values(pairs: Iterable[tuple[str, Any]]) -> None:
    for key, value in pairs:
        if value is not None:
            typer.echo(f"{key}: {value}")


def render_verdict(verdict: Verdict, output_format: str = "text") -> None:
    if output_format == "json":
        typer.echo(verdict.model_dump_json(indent=2))
        return
    echo_heading("Verdict")
    echo_key_values(
        [
            ("outcome", verdict.outcome.value),
            ("tier", verdict.tier.value),
            ("method", verdict.method.value),
        ]
    )
    typer.echo()
    echo_heading("Diagnostics")
    echo_key_values(verdict.diagnostics.model_dump(exclude_none=True).items())
    if verdict.witness is not None:
        typer.echo()
        echo_heading("Witness")
        typer.echo(" ".join(verdict.witness) if verdict.witness else "(empty)")
    if verdict.caveat:
        typer.echo()
        echo_heading("Caveat")
        typer.echo(verdict.caveat)


def render_validation(report: ValidationReport) -> None:
    echo_heading("Validation")
    if report.valid:
        typer.echo("valid")
        return
    for problem in report.problems:
        typer.echo(f"  - {problem}")


def render_reduction(winding: int, reduction: MonotoneReduction) -> None:
    echo_key_values([("winding", winding), ("k", reduction.original.k), ("n", reduction.original.n)])
    typer.echo("phi: " + " ".join(str(value) for value in reduction.original.phi))
    typer.echo()
    echo_heading("Monotone reduction")
    if not reduction.steps:
        typer.echo("already monotone" if not reduction.trivial else "trivial")
    for number, step in enumerate(reduction.steps, start=1):
        after = " ".join(str(value) for value in step.phi_after)
        typer.echo(f"  {number}. {step.kind} at {step.position}: {after}")
    typer.echo("result: " + ("trivial" if reduction.trivial else " ".join(map(str, reduction.result.phi))))


def render_report(report: AgreementReport) -> None:
    echo_heading(f"Experiment {report.name}")
    echo_key_values(
        [
            ("total", report.total),
            ("agreed", report.agreed),
            ("refused", report.refused),
            ("disagreements", len(report.disagreements)),
        ]
    )
    for item in report.disagreements:
        typer.echo(f"  - {item}")
