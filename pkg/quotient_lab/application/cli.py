# quotient_lab/application/cli.py
import functools
import json
import logging
from pathlib import Path
from typing import Optional

import click

from quotient_lab.domain.models.errors import (
    ParseError,
    PreconditionFailure,
    QuotientLabError,
)
from quotient_lab.domain.models.reports import CorpusEntry
from quotient_lab.domain.models.ring import FiniteRing
from quotient_lab.domain.services.lab_service import CorpusRunService, ideal_table
from quotient_lab.domain.services.quotient_service import build_qmax, is_kasch
from quotient_lab.domain.services.ring_constructors import ring_from_definition
from quotient_lab.domain.services.tot_service import METHODS, TotConstructionService
from quotient_lab.infrastructure.adapters.reports.file_report_writer import (
    FileReportWriter,
)
from quotient_lab.infrastructure.adapters.repositories.json_corpus_repository import (
    JSONCorpusRepository,
)
from quotient_lab.utils import config
from quotient_lab.utils.logging_config import setup_logging
from quotient_lab.utils.paths import report_path

logger = logging.getLogger("quotient_lab.cli")


def _handle_errors(command):
    """Convierte los errores del laboratorio en un mensaje y código de salida 1."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except QuotientLabError as e:
            logger.error(f"{type(e).__name__}: {e}")
            raise SystemExit(1) from e

    return wrapper


def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"{path}:{e.lineno}:{e.colno}") from e


def _service() -> CorpusRunService:
    return CorpusRunService(JSONCorpusRepository(logger=logger), logger=logger)


def _resolve_ring(text: str, corpus: Optional[Path]) -> FiniteRing:
    """Nombre de una entrada del corpus, archivo JSON con una definición o expresión."""
    path = Path(text)
    if path.suffix == ".json" and path.exists():
        return ring_from_definition(_read_json(path))
    for entry in JSONCorpusRepository(logger=logger).load(corpus):
        if entry.name == text:
            return CorpusRunService.ring_of(entry)
    return ring_from_definition(text)


@click.group()
@click.option("--log-level", default=config.LOG_LEVEL, show_default=True)
def cli(log_level: str):
    """Laboratorio exacto de anillos de cocientes de anillos finitos."""
    log_file = Path(config.LOG_FILE) if config.LOG_FILE else None
    setup_logging(log_level, log_file)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@_handle_errors
def validate(file: Path):
    """Valida un corpus o una definición de anillo."""
    raw = _read_json(file)
    if isinstance(raw, dict) and "rings" in raw:
        entries = JSONCorpusRepository(logger=logger).load(file)
        for entry in entries:
            ring = CorpusRunService.ring_of(entry)
            click.echo(f"{entry.name}: orden {ring.order}")
        click.echo(f"{len(entries)} anillos válidos")
    else:
        ring = ring_from_definition(raw)
        click.echo(f"{ring}: orden {ring.order}, válido")


@cli.command()
@click.argument("ring")
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), default=None)
@_handle_errors
def ideals(ring: str, corpus: Optional[Path]):
    """Tabla de ideales derechos: orden, denso, esencial y filtro de Goldie."""
    R = _resolve_ring(ring, corpus)
    table = ideal_table(R)
    click.echo(table.to_markdown(index=False))
    click.echo(
        f"\n{len(table)} ideales, {int(table['dense'].sum())} densos, "
        f"{int(table['essential'].sum())} esenciales"
    )


@cli.command()
@click.argument("ring")
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), default=None)
@_handle_errors
def qmax(ring: str, corpus: Optional[Path]):
    """Construye Q_max(R) = End(D)."""
    R = _resolve_ring(ring, corpus)
    qm = build_qmax(R)
    click.echo(f"R = {R}, |R| = {R.order}")
    click.echo(f"|D| = {qm.dense_ideal.order}")
    click.echo(f"|Q_max| = {qm.carrier.order}, módulos {list(qm.carrier.moduli)}")
    click.echo(f"Q_max = λ(R): {qm.carrier.order == R.order}")
    click.echo(f"Kasch: {is_kasch(qm)}")


@cli.command()
@click.argument("ring")
@click.option(
    "--method",
    type=click.Choice([*METHODS, "all"]),
    default="filter",
    show_default=True,
)
@click.option("--cap", type=int, default=config.QL_CAP, show_default=True)
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), default=None)
@_handle_errors
def qtot(ring: str, method: str, cap: int, corpus: Optional[Path]):
    """Calcula Q_tot(R) por uno o todos los métodos."""
    R = _resolve_ring(ring, corpus)
    qm = build_qmax(R)
    service = TotConstructionService(logger=logger)
    methods = METHODS if method == "all" else (method,)
    results = {}
    for name in methods:
        try:
            results[name] = service.qtot(qm, name, cap)
        except PreconditionFailure as e:
            click.echo(f"{name}: no aplica ({e.reason})")
            continue
        click.echo(f"{name}: |Q_tot| = {results[name].order}")
    if len({subring.members for subring in results.values()}) > 1:
        logger.error("Los métodos no coinciden")
        raise SystemExit(1)


@cli.command()
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--ring", "ring_name", default=None, help="Solo esta entrada del corpus")
@click.option("--cap", type=int, default=config.QL_CAP, show_default=True)
@_handle_errors
def verify(corpus: Optional[Path], ring_name: Optional[str], cap: int):
    """Ejecuta la batería de verificación sobre el corpus."""
    service = _service()
    entries = service.load(corpus)
    if ring_name:
        entries = [entry for entry in entries if entry.name == ring_name]
        if not entries:
            raise click.BadParameter(f"'{ring_name}' no está en el corpus")
    failed = 0
    for entry in entries:
        failed += _verify_entry(service, entry, cap)
    click.echo(f"{len(entries) - failed}/{len(entries)} anillos sin fallos")
    if failed:
        raise SystemExit(1)


def _verify_entry(service: CorpusRunService, entry: CorpusEntry, cap: int) -> int:
    qm = build_qmax(service.ring_of(entry))
    report = service.verification.verify_suite(qm, cap)
    status = "ok" if report.passed else "FALLA"
    click.echo(f"{entry.name}: {len(report.clauses)} cláusulas, {status}")
    for clause in report.failures:
        click.echo(f"    {clause.name}: {clause.detail}")
    return 0 if report.passed else 1


@cli.command()
@click.option("--out", type=click.Path(path_type=Path), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "md"]), default="json")
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--cap", type=int, default=config.QL_CAP, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_handle_errors
def report(out: Optional[Path], fmt: str, corpus: Optional[Path], cap: int, jobs: int):
    """Recorre el corpus y escribe el informe de corrida."""
    service = _service()
    run = service.run(service.load(corpus), cap=cap, jobs=jobs)
    out = out or report_path(fmt, corpus)
    FileReportWriter(logger=logger).write(run, out, fmt)
    click.echo(f"Informe en {out}")
    if not run.ok:
        for failure in run.failures:
            click.echo(f"FALLA {failure}")
        for ring, key, expected, computed in run.pin_mismatches:
            click.echo(f"PIN {ring}.{key}: esperado {expected}, calculado {computed}")
        raise SystemExit(1)
