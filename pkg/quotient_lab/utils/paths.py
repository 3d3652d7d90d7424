from pathlib import Path
from typing import Optional, Union

from pyprojroot import here

REPORTS_SUBDIR = "reports"


def reports_dir(*parts: Union[str, Path]) -> Path:
    """Ruta bajo `reports/` en la raíz del proyecto (la que detecta pyprojroot)."""
    return Path(here()).joinpath(REPORTS_SUBDIR, *parts)


def report_path(fmt: str, corpus: Optional[Path] = None) -> Path:
    """
    Destino por defecto de `ql report`.

    Args:
        fmt: 'json' o 'md'
        corpus: Corpus recorrido; sin él se usa el nombre del corpus incorporado

    Returns:
        reports/<nombre del corpus>.<fmt>
    """
    stem = Path(corpus).stem if corpus else "builtin"
    return reports_dir(f"{stem}.{fmt}")
