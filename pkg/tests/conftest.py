from typing import Dict

import pytest

from quotient_lab.domain.models.quotients import QMaxRealization
from quotient_lab.domain.models.ring import FiniteRing
from quotient_lab.domain.services.quotient_service import build_qmax
from quotient_lab.domain.services.ring_constructors import (
    parse_constructor,
    path_algebra,
)
from quotient_lab.domain.services.tot_service import TotConstructionService

EXPRESSIONS = [
    "F_2",
    "F_3",
    "Z/4",
    "Z/6",
    "F_2 x F_2",
    "M2(F_2)",
    "T2(F_2)",
    "T2(F_3)",
    "F_2[x]/(x^2)",
    "F_2[C_2]",
]

# Anillos baratos para las pruebas que recorren todo el corpus
SMALL = ["F_2", "Z/4", "Z/6", "F_2 x F_2", "T2(F_2)", "F_2[x]/(x^2)", "quiver"]


@pytest.fixture(scope="session")
def rings() -> Dict[str, FiniteRing]:
    built = {text: parse_constructor(text) for text in EXPRESSIONS}
    built["quiver"] = path_algebra(2, 3, [(0, 1), (1, 2)], [(0, 1)], name="A3/ab")
    return built


class LazyQMax(dict):
    """Q_max construido la primera vez que se pide cada anillo."""

    def __init__(self, rings: Dict[str, FiniteRing]):
        super().__init__()
        self.rings = rings

    def __missing__(self, name: str) -> QMaxRealization:
        self[name] = build_qmax(self.rings[name])
        return self[name]


@pytest.fixture(scope="session")
def qmax(rings) -> LazyQMax:
    return LazyQMax(rings)


@pytest.fixture(scope="session")
def tot() -> TotConstructionService:
    return TotConstructionService()
