# quotient_lab/domain/models/reports.py
"""Resultados de las construcciones y del laboratorio, serializables a JSON."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from quotient_lab.domain.models.ring import Subring

EXPECTATION_KEYS = (
    "order",
    "qmax_order",
    "qtot_order",
    "gamma",
    "ideal_count",
    "dense_count",
    "condition_c",
    "condition_c_prime",
    "semihereditary",
    "regular",
    "semisimple",
    "kasch",
    "nonsingular",
)


def subring_summary(subring: Subring) -> Dict[str, Any]:
    return {"order": subring.order, "members": list(subring.sorted_members)}


@dataclass(frozen=True)
class ClauseResult:
    """Resultado de una cláusula verificable, con testigo cuando falla."""

    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ChainStep:
    index: int
    subring: Subring
    flat_left: Optional[bool] = None
    epimorphism: Optional[bool] = None
    perfect_extension: Optional[bool] = None
    filter_perfect: Optional[bool] = None
    filter_size: Optional[int] = None
    basis_witness: List[List[int]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.subring.order

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "order": self.order,
            "flat_left": self.flat_left,
            "epimorphism": self.epimorphism,
            "perfect_extension": self.perfect_extension,
            "filter_perfect": self.filter_perfect,
            "filter_size": self.filter_size,
            "basis_witness": self.basis_witness,
        }


@dataclass
class ChainReport:
    """Cadena descendente Q_0 ⊇ Q_1 ⊇ ... hasta el punto fijo.

    Los índices son naturales: una cadena estrictamente decreciente en un
    conjunto finito se estabiliza, de modo que no hay pasos límite.
    """

    ring_name: str
    method: str
    steps: List[ChainStep]
    notes: List[str] = field(default_factory=list)

    @property
    def gamma(self) -> int:
        return len(self.steps) - 1

    @property
    def fixpoint(self) -> Subring:
        return self.steps[-1].subring

    def subring_at(self, index: int) -> Subring:
        return self.steps[min(index, self.gamma)].subring

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring_name,
            "method": self.method,
            "gamma": self.gamma,
            "fixpoint": subring_summary(self.fixpoint),
            "steps": [step.to_dict() for step in self.steps],
            "notes": list(self.notes),
        }


@dataclass
class OracleReport:
    """Traza del oráculo: extensiones perfectas intermedias, de menor a mayor."""

    ring_name: str
    examined: int
    perfect: List[ChainStep]

    @property
    def fixpoint(self) -> Subring:
        return self.perfect[-1].subring

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring_name,
            "method": "oracle",
            "examined": self.examined,
            "fixpoint": subring_summary(self.fixpoint),
            "steps": [step.to_dict() for step in self.perfect],
        }


@dataclass
class ConditionReport:
    ring_name: str
    side: str
    verdict: Optional[bool]
    examined: int
    cap_exceeded: bool = False
    witness: Optional[Subring] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring_name,
            "side": self.side,
            "verdict": self.verdict,
            "examined": self.examined,
            "cap_exceeded": self.cap_exceeded,
            "witness": subring_summary(self.witness) if self.witness else None,
        }


@dataclass
class PerfectFilterEvidence:
    """Decisión de perfección de un filtro y la evidencia de muestreo."""

    filter_name: str
    perfect: bool
    extension_perfect: bool
    filter_recovered: bool
    quotient_order: Optional[int]
    sampling: List[ClauseResult] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.perfect

    def to_dict(self) -> Dict[str, Any]:
        return {
            "filter": self.filter_name,
            "perfect": self.perfect,
            "extension_perfect": self.extension_perfect,
            "filter_recovered": self.filter_recovered,
            "quotient_order": self.quotient_order,
            "sampling": [clause.to_dict() for clause in self.sampling],
        }


@dataclass
class VerificationReport:
    ring_name: str
    clauses: List[ClauseResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> ClauseResult:
        clause = ClauseResult(name, bool(passed), detail)
        self.clauses.append(clause)
        return clause

    def extend(self, clauses: List[ClauseResult]) -> None:
        self.clauses.extend(clauses)

    @property
    def passed(self) -> bool:
        return all(clause.passed for clause in self.clauses)

    @property
    def failures(self) -> List[ClauseResult]:
        return [clause for clause in self.clauses if not clause.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": self.ring_name,
            "passed": self.passed,
            "clauses": [clause.to_dict() for clause in self.clauses],
        }


@dataclass(frozen=True)
class CorpusEntry:
    """Entrada del corpus: definición en línea o expresión de constructor."""

    name: str
    definition: Union[str, Dict[str, Any]]
    expected: Dict[str, Any] = field(default_factory=dict)
    description: str = ""

    @property
    def is_constructor(self) -> bool:
        return isinstance(self.definition, str)


@dataclass
class RunReport:
    """Informe por anillo de una corrida del laboratorio."""

    rings: List[Dict[str, Any]] = field(default_factory=list)
    pin_mismatches: List[Tuple[str, str, Any, Any]] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    generated_at: str = ""

    @property
    def ok(self) -> bool:
        return not self.pin_mismatches and not self.failures

    def to_dict(self, include_timestamp: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "rings": self.rings,
            "pin_mismatches": [
                {"ring": ring, "key": key, "expected": expected, "computed": computed}
                for ring, key, expected, computed in self.pin_mismatches
            ],
            "failures": list(self.failures),
            "ok": self.ok,
        }
        if include_timestamp:
            data["generated_at"] = self.generated_at
        return data
