# quotient_lab/domain/services/lab_service.py
import logging
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from quotient_lab.domain.models.errors import (
    CapExceeded,
    FlatnessFailure,
    PreconditionFailure,
    QuotientLabError,
)
from quotient_lab.domain.models.reports import CorpusEntry, RunReport
from quotient_lab.domain.models.ring import FiniteRing
from quotient_lab.domain.ports.repositories import ICorpusRepository
from quotient_lab.domain.services.ideal_service import ideal_rows, lambek_filter
from quotient_lab.domain.services.module_service import is_nonsingular, regular_module
from quotient_lab.domain.services.quotient_service import build_qmax, is_kasch
from quotient_lab.domain.services.ring_constructors import ring_from_definition
from quotient_lab.domain.services.ring_service import (
    is_semisimple,
    is_von_neumann_regular,
)
from quotient_lab.domain.services.tot_service import TotConstructionService
from quotient_lab.domain.services.verification_service import VerificationService


def ideal_table(ring: FiniteRing) -> pd.DataFrame:
    """Tabla del retículo de ideales derechos."""
    return pd.DataFrame(
        ideal_rows(ring), columns=["ideal", "order", "dense", "essential", "goldie"]
    )


def ring_of(entry: CorpusEntry) -> FiniteRing:
    return ring_from_definition(entry.definition, entry.name)


class RingSummarizer:
    """Calcula el resumen de una entrada del corpus, sin depender del repositorio"""

    def __init__(
        self,
        tot_service: Optional[TotConstructionService] = None,
        verification_service: Optional[VerificationService] = None,
        logger: Optional[logging.Logger] = None,
    ):
        self.logger = logger or logging.getLogger(__name__)
        self.tot = tot_service or TotConstructionService(logger=self.logger)
        self.verification = verification_service or VerificationService(
            self.tot, logger=self.logger
        )

    def summarize(
        self, entry: CorpusEntry, cap: Optional[int] = None, verify: bool = True
    ) -> Dict[str, Any]:
        """
        Resumen calculado de un anillo. Las expectativas de la entrada no
        intervienen en ningún valor.
        """
        ring = ring_of(entry)
        self.logger.info(f"Procesando {entry.name} (orden {ring.order})")
        table = ideal_table(ring)
        summary: Dict[str, Any] = {
            "name": entry.name,
            "order": ring.order,
            "ideal_count": int(len(table)),
            "dense_count": int(table["dense"].sum()),
            "essential_count": int(table["essential"].sum()),
            "regular": is_von_neumann_regular(ring),
            "semisimple": is_semisimple(ring),
            "nonsingular": is_nonsingular(regular_module(ring)),
            "semihereditary": self.tot.is_right_semihereditary(ring),
        }

        qm = build_qmax(ring)
        summary["qmax_order"] = qm.carrier.order
        summary["kasch"] = is_kasch(qm)
        summary["lambek_size"] = len(lambek_filter(ring))

        morita = self.tot.morita_chain(qm)
        summary["gamma"] = morita.gamma
        summary["qtot_order"] = morita.fixpoint.order
        summary["chains"] = {"morita": morita.to_dict()}
        summary.update(self._conditions(qm, cap))
        others = self._other_methods(qm, cap)
        summary["chains"].update(others)
        summary["gamma_filter"] = others["filter"].get("gamma")
        orders = [
            chain["fixpoint"]["order"] for chain in others.values() if "fixpoint" in chain
        ]
        summary["methods_agree"] = all(order == morita.fixpoint.order for order in orders)

        if verify:
            report = self.verification.verify_suite(qm, cap)
            summary["verification"] = report.to_dict()
        return summary

    def _conditions(self, qm, cap: Optional[int]) -> Dict[str, Any]:
        c = self.tot.condition_report(qm, "C", cap)
        c_prime = self.tot.condition_report(qm, "C'", cap)
        return {
            "condition_c": c.verdict,
            "condition_c_prime": c_prime.verdict,
            "conditions": {"C": c.to_dict(), "C'": c_prime.to_dict()},
        }

    def _other_methods(self, qm, cap: Optional[int]) -> Dict[str, Any]:
        """Cadena de filtros, atajo y oráculo; cada uno puede no aplicar."""
        chains: Dict[str, Any] = {}
        try:
            chains["filter"] = self.tot.simplified_chain(qm).to_dict()
        except FlatnessFailure as e:
            self.logger.warning(f"{qm.base}: {e}")
            chains["filter"] = {"skipped": str(e)}
        try:
            chains["shortcut"] = self.tot.shortcut_chain(qm).to_dict()
        except PreconditionFailure as e:
            chains["shortcut"] = {"skipped": str(e)}
        try:
            chains["oracle"] = self.tot.oracle_report(qm, cap).to_dict()
        except CapExceeded as e:
            self.logger.warning(f"{qm.base}: {e}")
            chains["oracle"] = {"skipped": str(e)}
        return chains

    def safe_summary(
        self, entry: CorpusEntry, cap: Optional[int], verify: bool
    ) -> Tuple[Optional[Dict[str, Any]], Optional[str]]:
        try:
            return self.summarize(entry, cap, verify), None
        except QuotientLabError as e:
            return None, str(e)


class CorpusRunService:
    """Servicio de dominio que recorre el corpus y arma el informe de corrida"""

    def __init__(
        self,
        repository: ICorpusRepository,
        tot_service: Optional[TotConstructionService] = None,
        verification_service: Optional[VerificationService] = None,
        logger: Optional[logging.Logger] = None,
    ):
        self.repository = repository
        self.logger = logger or logging.getLogger(__name__)
        self.summarizer = RingSummarizer(tot_service, verification_service, self.logger)

    @property
    def tot(self) -> TotConstructionService:
        return self.summarizer.tot

    @property
    def verification(self) -> VerificationService:
        return self.summarizer.verification

    def load(self, path: Optional[Path] = None) -> List[CorpusEntry]:
        return self.repository.load(path)

    @staticmethod
    def ring_of(entry: CorpusEntry) -> FiniteRing:
        return ring_of(entry)

    def summarize(
        self, entry: CorpusEntry, cap: Optional[int] = None, verify: bool = True
    ) -> Dict[str, Any]:
        return self.summarizer.summarize(entry, cap, verify)

    @staticmethod
    def check_pins(entry: CorpusEntry, summary: Dict[str, Any]) -> List[Tuple]:
        """Diferencias entre lo calculado y las expectativas de la entrada."""
        return [
            (entry.name, key, expected, summary.get(key))
            for key, expected in sorted(entry.expected.items())
            if summary.get(key) != expected
        ]

    def run(
        self,
        entries: List[CorpusEntry],
        cap: Optional[int] = None,
        verify: bool = True,
        jobs: int = 1,
    ) -> RunReport:
        """Procesa el corpus (un proceso por entrada si jobs > 1)."""
        report = RunReport(generated_at=datetime.now(timezone.utc).isoformat())
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                caps, flags = [cap] * len(entries), [verify] * len(entries)
                outcomes = list(pool.map(_summarize_entry, entries, caps, flags))
        else:
            outcomes = [
                self.summarizer.safe_summary(entry, cap, verify) for entry in entries
            ]

        for entry, (summary, error) in zip(entries, outcomes):
            if error:
                self.logger.error(f"{entry.name}: {error}")
                report.failures.append(f"{entry.name}: {error}")
                continue
            report.rings.append(summary)
            report.pin_mismatches.extend(self.check_pins(entry, summary))
            if not summary["methods_agree"]:
                report.failures.append(f"{entry.name}: los métodos de Q_tot discrepan")
            clauses = summary.get("verification", {}).get("clauses", [])
            for clause in clauses:
                if not clause["passed"]:
                    report.failures.append(f"{entry.name}: {clause['name']}")
        self.logger.info(
            f"Corrida terminada: {len(report.rings)} anillos, "
            f"{len(report.failures)} fallos, {len(report.pin_mismatches)} pines distintos"
        )
        return report


def _summarize_entry(entry: CorpusEntry, cap: Optional[int], verify: bool):
    return RingSummarizer().safe_summary(entry, cap, verify)
