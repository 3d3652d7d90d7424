# quotient_lab/domain/models/quotients.py
"""Q_max(R) realizado como End_R(D), teorías de torsión y anillos de cocientes."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Optional

import numpy as np

from quotient_lab.domain.models.ideals import GabrielFilter, RightIdeal
from quotient_lab.domain.models.module import FiniteModule, HomGroup
from quotient_lab.domain.models.ring import FiniteRing, RingEmbedding, Subring


@dataclass(frozen=True, eq=False)
class QMaxRealization:
    """
    Q = End_R(D) con el producto q1·q2 = q1 ∘ q2 y λ(r) = multiplicación
    izquierda por r restringida a D.

    `endomorphisms[j]` es la matriz (convención de filas, base de D) del
    j-ésimo generador aditivo del portador.
    """

    base: FiniteRing
    dense_ideal: RightIdeal
    dense_module: FiniteModule = field(repr=False)
    carrier: FiniteRing = field(repr=False)
    embedding: RingEmbedding = field(repr=False)
    endomorphisms: HomGroup = field(repr=False)

    @cached_property
    def lambda_image(self) -> Subring:
        return self.embedding.image

    @cached_property
    def full(self) -> Subring:
        everything = frozenset(range(self.carrier.order))
        return Subring(self.carrier, everything, label=str(self.carrier))

    @cached_property
    def _lambda_indices(self) -> np.ndarray:
        return np.asarray(self.embedding.index_map, dtype=np.int64)

    def colon_set(self, q: int, target: Optional[Subring] = None) -> FrozenSet[int]:
        """(T : q) = {r ∈ R : q·λ(r) ∈ T}; T = λ(R) por defecto."""
        target = self.lambda_image if target is None else target
        row = self.carrier.mul_table[int(q), self._lambda_indices]
        inside = np.isin(row, target.member_array)
        return frozenset(int(r) for r in np.flatnonzero(inside))

    @cached_property
    def colon_table(self) -> np.ndarray:
        """Matriz booleana |Q| x |R|: r ∈ (R : q)."""
        products = self.carrier.mul_table[:, self._lambda_indices]
        return np.isin(products, self.lambda_image.member_array)

    def colon(self, q: int) -> FrozenSet[int]:
        return frozenset(int(r) for r in np.flatnonzero(self.colon_table[int(q)]))

    def extension(self, subring: Subring) -> RingEmbedding:
        """λ: R -> T para λ(R) ⊆ T ⊆ portador, con T como anillo propio."""
        realization = subring.realization
        own = realization.ring
        images = []
        for row in self.embedding.images:
            ambient_index = self.carrier.index_of(row)
            images.append(own.coords(realization.index_in_ring(ambient_index)))
        return RingEmbedding(self.base, own, np.array(images, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class TorsionTheory:
    """Teoría de torsión hereditaria: su filtro y, si existe, su extensión plana."""

    base: FiniteRing
    filter: GabrielFilter
    extension: Optional[RingEmbedding] = None
    name: str = ""

    def __str__(self) -> str:
        return self.name or str(self.filter)


@dataclass(frozen=True, eq=False)
class QuotientSubring:
    """Subanillo del portador de Q_max etiquetado con el filtro que lo produjo."""

    subring: Subring
    filter: Optional[GabrielFilter] = None

    @property
    def order(self) -> int:
        return self.subring.order

    @property
    def members(self) -> FrozenSet[int]:
        return self.subring.members

    def __str__(self) -> str:
        return str(self.subring)
