from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Optional

from quotient_lab.domain.models.reports import CorpusEntry, RunReport


class ICorpusRepository(ABC):
    """Puerto (interfaz) para la fuente del corpus de anillos"""

    @abstractmethod
    def load(self, path: Optional[Path] = None) -> List[CorpusEntry]:
        """Carga las entradas del corpus (el corpus incluido si no hay ruta)"""
        pass


class IReportWriter(ABC):
    """Puerto (interfaz) para la emisión de informes de corrida"""

    @abstractmethod
    def render(self, report: RunReport, fmt: str = "json") -> str:
        """Devuelve el informe como texto en el formato pedido"""
        pass

    @abstractmethod
    def write(self, report: RunReport, path: Path, fmt: str = "json") -> Path:
        """Escribe el informe en disco y retorna la ruta escrita"""
        pass
