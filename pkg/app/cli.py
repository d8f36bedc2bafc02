"""Interface en ligne de commande du service de dissection."""

import logging
from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from app.exceptions import (
    CensusError,
    CertificateFormatError,
    InternalInvariantViolation,
    InvalidParameter,
    NotFeasible,
    StructuralError,
)
from app.schema.census_schema import Census
from app.services.census_service import (
    check_feasibility,
    euler_sum,
    parse_census,
    pieces,
    total_faces,
    triple_points,
)
from app.services.complex_service import certificate_summary, verify
from app.services.export_service import (
    certificate_to_dot,
    censuses_to_json_lines,
    dump_certificate,
    load_certificate,
    plan_to_json,
)
from app.services.logger import setup_logger
from app.services.oracle_service import enumerate_n0, sorted_censuses
from app.services.planner_service import explain, plan_reduction
from app.services.surgery_service import realize

logger = logging.getLogger(__name__)

# Codes de sortie: contrat stable
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

cli = typer.Typer(
    help="Dissections de S² par immersions: décision, plan, réalisation, vérification.",
    add_completion=False,
    no_args_is_help=True,
)


class ExportFormat(str, Enum):
    DOT = "dot"
    JSON = "json"


@cli.callback()
def main() -> None:
    setup_logger("app")


def _parse_or_exit(census_text: str) -> Census:
    try:
        return parse_census(census_text)
    except CensusError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)


def _load_or_exit(cert_path: Path):
    try:
        return load_certificate(cert_path.read_bytes())
    except OSError as e:
        typer.echo(f"error: lecture impossible de {cert_path}: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)
    except CertificateFormatError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)


def _write(data: bytes, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(data.decode(), nl=False)
    else:
        out.write_bytes(data)


@cli.command("check")
def cmd_check(
    census_text: str = typer.Argument(..., help='Recensement "a1,a2,..."'),
    explain_pieces: bool = typer.Option(False, "--explain", help="Détail des pièces et de chi"),
) -> None:
    """Décide si un recensement satisfait (E) et (P)."""
    census = _parse_or_exit(census_text)
    verdict = check_feasibility(census)
    typer.echo(verdict.to_line())

    if explain_pieces:
        for row in pieces(census):
            typer.echo(f"  C_{row.k}: {row.count} pièce(s), chi = {row.euler_characteristic}")
        typer.echo(f"  somme chi = {euler_sum(census)}, pièces = {total_faces(census)}")
        if verdict.feasible:
            typer.echo(f"  points triples = {triple_points(verdict)}")

    raise typer.Exit(EXIT_OK if verdict.feasible else EXIT_FAILED)


@cli.command("plan")
def cmd_plan(
    census_text: str = typer.Argument(..., help='Recensement "a1,a2,..."'),
    explain_steps: bool = typer.Option(False, "--explain", help="Chaîne lisible au lieu du JSON"),
) -> None:
    """Affiche le plan de chirurgie d'un recensement réalisable."""
    census = _parse_or_exit(census_text)
    try:
        plan = plan_reduction(census)
    except NotFeasible as e:
        typer.echo(f"infeasible reason={e.reason}")
        raise typer.Exit(EXIT_FAILED)
    except InternalInvariantViolation as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INTERNAL)

    if explain_steps:
        for line in explain(plan):
            typer.echo(line)
    else:
        typer.echo(plan_to_json(plan).decode(), nl=False)


@cli.command("realize")
def cmd_realize(
    census_text: str = typer.Argument(..., help='Recensement "a1,a2,..."'),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Fichier sd-cert/1 à écrire"),
) -> None:
    """Réalise un recensement et écrit le certificat auto-vérifié."""
    census = _parse_or_exit(census_text)
    try:
        cert = realize(census)
        summary = certificate_summary(cert)
    except NotFeasible as e:
        typer.echo(f"infeasible reason={e.reason}")
        raise typer.Exit(EXIT_FAILED)
    except (InternalInvariantViolation, StructuralError) as e:
        logger.error(f"Réalisation interrompue: {e}")
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INTERNAL)

    _write(dump_certificate(cert), out)
    typer.echo(summary.to_line(), err=out is None)


@cli.command("verify")
def cmd_verify(
    cert_path: Path = typer.Argument(..., help="Fichier sd-cert/1"),
) -> None:
    """Vérifie un certificat et recalcule son recensement."""
    cert = _load_or_exit(cert_path)
    report = verify(cert)

    for check in report.checks:
        typer.echo(check.to_line())
    if report.ok:
        typer.echo(f"census={report.census.to_text()} n={report.n}")
        raise typer.Exit(EXIT_OK)
    raise typer.Exit(EXIT_FAILED)


@cli.command("export")
def cmd_export(
    cert_path: Path = typer.Argument(..., help="Fichier sd-cert/1"),
    output_format: ExportFormat = typer.Option(ExportFormat.DOT, "--format", "-f", help="Format de sortie"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Fichier de sortie"),
) -> None:
    """Exporte un certificat valide en DOT (ou en JSON canonique)."""
    cert = _load_or_exit(cert_path)
    try:
        if output_format == ExportFormat.DOT:
            data = certificate_to_dot(cert).encode()
        else:
            certificate_summary(cert)
            data = dump_certificate(cert)
    except StructuralError as e:
        typer.echo(f"error: certificat invalide: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)

    _write(data, out)


@cli.command("enumerate")
def cmd_enumerate(
    max_circles: int = typer.Option(8, "--max-circles", help="Nombre maximal de cercles (pair)"),
) -> None:
    """Énumère les recensements sans point triple, en lignes JSON."""
    try:
        censuses = enumerate_n0(max_circles)
    except InvalidParameter as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(EXIT_INPUT)

    typer.echo(censuses_to_json_lines(sorted_censuses(censuses)), nl=False)


if __name__ == "__main__":
    cli()
