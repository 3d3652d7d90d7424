import json
from pathlib import Path

import pytest

from quotient_lab.domain.models.errors import CorpusValidationError, ParseError
from quotient_lab.domain.models.reports import EXPECTATION_KEYS
from quotient_lab.domain.services.lab_service import CorpusRunService
from quotient_lab.infrastructure.adapters.repositories.json_corpus_repository import (
    JSONCorpusRepository,
)


@pytest.fixture
def repository() -> JSONCorpusRepository:
    return JSONCorpusRepository()


def _write(tmp_path: Path, payload) -> Path:
    path = tmp_path / "corpus.json"
    text = payload if isinstance(payload, str) else json.dumps(payload)
    path.write_text(text, encoding="utf-8")
    return path


def test_builtin_corpus_loads(repository):
    entries = repository.load()
    names = [entry.name for entry in entries]
    assert len(entries) >= 12
    assert len(set(names)) == len(names)
    assert "T2(F_3)" in names
    for entry in entries:
        assert set(entry.expected) <= set(EXPECTATION_KEYS)


def test_builtin_entries_build_their_rings(repository):
    entries = {entry.name: entry for entry in repository.load()}
    assert CorpusRunService.ring_of(entries["T2(F_3)"]).order == 27
    quiver = CorpusRunService.ring_of(entries["quiver A3 ab=0"])
    assert quiver.order == 32
    assert quiver.name == "quiver A3 ab=0"
    assert not entries["quiver A3 ab=0"].is_constructor


def test_inline_definition(repository, tmp_path):
    path = _write(
        tmp_path,
        {
            "rings": [
                {
                    "name": "Z/9",
                    "definition": {"moduli": [9], "unit": [1], "mul": [[[1]]]},
                    "expected": {"order": 9},
                }
            ]
        },
    )
    (entry,) = repository.load(path)
    assert entry.expected == {"order": 9}
    assert entry.description == ""


def test_malformed_json_reports_location(repository, tmp_path):
    path = _write(tmp_path, '{"rings": [\n  {"name": }\n]}')
    with pytest.raises(ParseError) as info:
        repository.load(path)
    assert f"{path}:2:" in str(info.value)


@pytest.mark.parametrize(
    "payload",
    [
        [],
        {"anillos": []},
        {"rings": [{"name": "sin definición"}]},
        {"rings": [{"name": "numérica", "definition": 7}]},
        {
            "rings": [
                {"name": "A", "definition": "F_2"},
                {"name": "A", "definition": "F_3"},
            ]
        },
    ],
)
def test_structural_errors(repository, tmp_path, payload):
    with pytest.raises(ParseError):
        repository.load(_write(tmp_path, payload))


def test_unknown_expectation_key(repository, tmp_path):
    payload = {"rings": [{"name": "F_2", "definition": "F_2", "expected": {"color": 1}}]}
    with pytest.raises(CorpusValidationError):
        repository.load(_write(tmp_path, payload))


def test_invalid_ring_definition(repository, tmp_path):
    payload = {"rings": [{"name": "malo", "definition": "M2(F_4)"}]}
    with pytest.raises(CorpusValidationError) as info:
        repository.load(_write(tmp_path, payload))
    assert info.value.entry == "malo"
