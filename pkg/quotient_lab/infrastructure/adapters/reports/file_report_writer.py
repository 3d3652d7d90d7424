# quotient_lab/infrastructure/adapters/reports/file_report_writer.py
import json
import logging
from pathlib import Path
from typing import Optional

import pandas as pd

from quotient_lab.domain.models.reports import RunReport
from quotient_lab.domain.ports.repositories import IReportWriter

SUMMARY_COLUMNS = [
    "name",
    "order",
    "ideal_count",
    "dense_count",
    "qmax_order",
    "qtot_order",
    "gamma",
    "condition_c",
    "condition_c_prime",
    "semihereditary",
    "regular",
    "semisimple",
    "kasch",
    "nonsingular",
]


class FileReportWriter(IReportWriter):
    """Informes en JSON (claves ordenadas) o en Markdown"""

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def render(self, report: RunReport, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(
                report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False
            )
        if fmt == "md":
            return self._markdown(report)
        raise ValueError(f"formato desconocido: {fmt}")

    def write(self, report: RunReport, path: Path, fmt: str = "json") -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(report, fmt) + "\n", encoding="utf-8")
        self.logger.info(f"Informe guardado en {path}")
        return path

    def _markdown(self, report: RunReport) -> str:
        df = pd.DataFrame(report.rings).reindex(columns=SUMMARY_COLUMNS)
        lines = [
            "# Informe del corpus",
            "",
            f"Generado: {report.generated_at}",
            "",
            df.to_markdown(index=False),
            "",
        ]
        verification = [
            {
                "name": ring["name"],
                "clauses": len(ring["verification"]["clauses"]),
                "passed": ring["verification"]["passed"],
            }
            for ring in report.rings
            if "verification" in ring
        ]
        if verification:
            table = pd.DataFrame(verification).to_markdown(index=False)
            lines += ["## Verificación", "", table, ""]
        if report.pin_mismatches:
            mismatches = pd.DataFrame(
                report.pin_mismatches, columns=["ring", "key", "expected", "computed"]
            )
            lines += ["## Pines distintos", "", mismatches.to_markdown(index=False), ""]
        if report.failures:
            lines += ["## Fallos", ""] + [f"- {failure}" for failure in report.failures]
        return "\n".join(lines)
