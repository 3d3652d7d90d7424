# quotient_lab/domain/models/errors.py
from typing import Any, Optional


class QuotientLabError(Exception):
    """Error base del laboratorio"""


class RingValidationError(QuotientLabError, ValueError):
    """Los datos de estructura no definen un anillo válido"""


class DefinitionError(RingValidationError):
    """Módulos o dimensiones del tensor de estructura inconsistentes"""


class CompatibilityViolation(RingValidationError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(
            f"e_{i}·e_{j} no es compatible con los módulos d_{i}, d_{j}"
        )


class AssociativityViolation(RingValidationError):
    def __init__(self, i: int, j: int, l: int):  # noqa: E741
        self.i, self.j, self.l = i, j, l
        super().__init__(f"(e_{i}·e_{j})·e_{l} != e_{i}·(e_{j}·e_{l})")


class UnitViolation(RingValidationError):
    def __init__(self, i: int):
        self.i = i
        super().__init__(f"la unidad no actúa como identidad sobre e_{i}")


class ModuleValidationError(QuotientLabError, ValueError):
    """Matrices de acción o aplicaciones que no respetan la estructura de módulo"""


class CapExceeded(QuotientLabError):
    def __init__(self, cap: int, what: str = "enumeración"):
        self.cap = cap
        self.what = what
        super().__init__(f"{what}: se superó el límite de {cap}")


class PresentationMismatch(QuotientLabError):
    """La presentación calculada no reproduce el módulo"""


class RealizationViolation(QuotientLabError):
    """End(D) no realiza Q_max: imagen fuera de D o λ no inyectiva"""


class InternalViolation(QuotientLabError):
    """Una afirmación estructural interna resultó falsa"""


class DirectednessViolation(QuotientLabError):
    def __init__(self, witness: Any):
        self.witness = witness
        super().__init__(
            f"la familia de extensiones perfectas no es dirigida: {witness}"
        )


class NotASubring(QuotientLabError):
    def __init__(self, witness: tuple, operation: str = ""):
        self.witness = witness
        self.operation = operation
        super().__init__(
            f"el conjunto de pertenencia no es subanillo ({operation} de {witness})"
        )


class FlatnessFailure(QuotientLabError):
    def __init__(self, step: int, detail: Optional[str] = None):
        self.step = step
        self.detail = detail
        message = f"Q_{step} no es plano como R-módulo izquierdo"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class PreconditionFailure(QuotientLabError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class ParseError(QuotientLabError):
    def __init__(self, message: str, location: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class CorpusValidationError(QuotientLabError):
    def __init__(self, entry: str, cause: Exception):
        self.entry = entry
        self.cause = cause
        super().__init__(f"entrada '{entry}' inválida: {cause}")
