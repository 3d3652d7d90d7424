import json

import pytest

from quotient_lab.domain.models.reports import RunReport
from quotient_lab.infrastructure.adapters.reports.file_report_writer import (
    FileReportWriter,
)


@pytest.fixture
def run_report() -> RunReport:
    return RunReport(
        rings=[
            {
                "name": "Z/4",
                "order": 4,
                "qmax_order": 4,
                "qtot_order": 4,
                "gamma": 0,
                "verification": {"passed": True, "clauses": [{"name": "x"}]},
            }
        ],
        pin_mismatches=[("Z/4", "gamma", 1, 0)],
        failures=["Z/4: cláusula"],
        generated_at="2024-01-01T00:00:00+00:00",
    )


def test_json_is_sorted_and_complete(run_report):
    text = FileReportWriter().render(run_report, "json")
    data = json.loads(text)
    assert data["ok"] is False
    assert data["pin_mismatches"][0]["key"] == "gamma"
    assert list(data) == sorted(data)


def test_markdown_sections(run_report):
    text = FileReportWriter().render(run_report, "md")
    assert text.startswith("# Informe del corpus")
    assert "## Verificación" in text
    assert "## Pines distintos" in text
    assert "- Z/4: cláusula" in text
    assert "qmax_order" in text


def test_unknown_format(run_report):
    with pytest.raises(ValueError):
        FileReportWriter().render(run_report, "xml")


def test_write_creates_parent_directories(run_report, tmp_path):
    path = FileReportWriter().write(run_report, tmp_path / "a" / "b" / "r.json")
    assert path.exists()
    assert json.loads(path.read_text(encoding="utf-8"))["failures"] == ["Z/4: cláusula"]
