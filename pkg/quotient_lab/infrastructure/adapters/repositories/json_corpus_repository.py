# quotient_lab/infrastructure/adapters/repositories/json_corpus_repository.py
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from quotient_lab.domain.models.errors import (
    CorpusValidationError,
    ParseError,
    QuotientLabError,
)
from quotient_lab.domain.models.reports import EXPECTATION_KEYS, CorpusEntry
from quotient_lab.domain.ports.repositories import ICorpusRepository
from quotient_lab.domain.services.ring_constructors import ring_from_definition
from quotient_lab.utils import config


class JSONCorpusRepository(ICorpusRepository):
    """
    Corpus en un archivo JSON: {"rings": [{"name", "definition", "expected",
    "description"}, ...]}.

    Cada definición se valida construyendo el anillo al cargar.
    """

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def load(self, path: Optional[Path] = None) -> List[CorpusEntry]:
        path = Path(path) if path else config.BUILTIN_CORPUS
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, f"{path}:{e.lineno}:{e.colno}") from e

        if not isinstance(raw, dict) or not isinstance(raw.get("rings"), list):
            raise ParseError("se esperaba un objeto con la lista 'rings'", str(path))

        entries = [
            self._entry(item, position, path)
            for position, item in enumerate(raw["rings"])
        ]
        names = [entry.name for entry in entries]
        duplicated = sorted({name for name in names if names.count(name) > 1})
        if duplicated:
            raise ParseError(f"nombres repetidos: {duplicated}", str(path))

        self.logger.info(f"Corpus {path.name}: {len(entries)} anillos")
        return entries

    def _entry(self, item: Dict[str, Any], position: int, path: Path) -> CorpusEntry:
        location = f"{path}:rings[{position}]"
        if not isinstance(item, dict) or "name" not in item or "definition" not in item:
            raise ParseError("cada entrada necesita 'name' y 'definition'", location)

        name = str(item["name"])
        expected = item.get("expected", {}) or {}
        unknown = sorted(set(expected) - set(EXPECTATION_KEYS))
        if unknown:
            error = ValueError(f"claves de expectativa {unknown}")
            raise CorpusValidationError(name, error)

        definition = item["definition"]
        if not isinstance(definition, (str, dict)):
            raise ParseError("'definition' debe ser texto u objeto", location)
        try:
            ring_from_definition(definition, name)
        except QuotientLabError as e:
            raise CorpusValidationError(name, e) from e

        return CorpusEntry(
            name=name,
            definition=definition,
            expected=dict(expected),
            description=str(item.get("description", "")),
        )
