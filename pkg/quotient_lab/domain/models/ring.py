# quotient_lab/domain/models/ring.py
"""Anillos finitos presentados por constantes de estructura sobre Z_{d_1} x ... x Z_{d_k}.

Los elementos se manejan internamente por índice en el orden lexicográfico
de sus coordenadas; las tablas de suma y producto se derivan bajo demanda.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from quotient_lab.domain.models.abelian import (
    AbelianSubgroup,
    all_vectors,
    radix_weights,
    reduce_mod,
    span_indices,
)
from quotient_lab.utils import config


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """Anillo finito asociativo con unidad.

    `structure[i, j]` son las coordenadas de e_i·e_j y `unit` las de la unidad.
    La validación de los axiomas vive en `ring_service.validate_ring`.
    """

    moduli: Tuple[int, ...]
    structure: np.ndarray = field(repr=False)
    unit: Tuple[int, ...]
    name: str = ""

    def __str__(self) -> str:
        return self.name or f"Ring(order={self.order})"

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return int(np.prod(self.moduli, dtype=object)) if self.moduli else 1

    @cached_property
    def elements(self) -> np.ndarray:
        if self.order > config.QL_ELEMENT_LIMIT:
            raise ValueError(
                f"{self}: orden {self.order} supera QL_ELEMENT_LIMIT="
                f"{config.QL_ELEMENT_LIMIT}"
            )
        return all_vectors(self.moduli)

    @cached_property
    def _weights(self) -> np.ndarray:
        return radix_weights(self.moduli)

    @cached_property
    def _moduli_array(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        return np.mod(np.asarray(vectors, dtype=np.int64), self._moduli_array)

    def index_of(self, coords: Sequence[int]) -> int:
        return int(self.reduce(np.array(coords)) @ self._weights)

    def indices_of(self, vectors: np.ndarray) -> np.ndarray:
        return self.reduce(vectors) @ self._weights

    def coords(self, index: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.elements[index])

    @cached_property
    def unit_index(self) -> int:
        return self.index_of(self.unit)

    zero_index = 0

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Producto coordenada a coordenada de filas x, y (mismo número de filas)."""
        x = np.atleast_2d(np.asarray(x, dtype=np.int64))
        y = np.atleast_2d(np.asarray(y, dtype=np.int64))
        return self.reduce(np.einsum("ai,aj,ijk->ak", x, y, self.structure))

    @cached_property
    def mul_table(self) -> np.ndarray:
        E = self.elements
        products = np.einsum("ai,bj,ijk->abk", E, E, self.structure)
        return self.indices_of(products)

    @cached_property
    def add_table(self) -> np.ndarray:
        E = self.elements
        return self.indices_of(E[:, None, :] + E[None, :, :])

    @cached_property
    def negation(self) -> np.ndarray:
        return self.indices_of(-self.elements)

    def element(self, coords: Sequence[int]) -> "RingElement":
        return RingElement(self, reduce_mod(coords, self.moduli))

    def basis_element(self, i: int) -> "RingElement":
        return self.element([1 if j == i else 0 for j in range(self.rank)])

    def one(self) -> "RingElement":
        return self.element(self.unit)

    def right_mult_matrix(self, r: Sequence[int]) -> np.ndarray:
        """Matriz (convención de filas) de x -> x·r."""
        return np.einsum("i,jik->jk", np.asarray(r, dtype=np.int64), self.structure)

    def left_mult_matrix(self, r: Sequence[int]) -> np.ndarray:
        """Matriz (convención de filas) de x -> r·x."""
        return np.einsum("i,ijk->jk", np.asarray(r, dtype=np.int64), self.structure)

    def span(
        self, seeds: Iterable[int], start: Optional[Iterable[int]] = None
    ) -> FrozenSet[int]:
        """Subgrupo aditivo generado por `seeds` (y por `start`, ya cerrado)."""
        return span_indices(self.add_table, seeds, start)

    def ideal_product_contains_unit(
        self, left: Iterable[int], right: Iterable[int]
    ) -> bool:
        """Decide si 1 pertenece al subgrupo generado por left·right."""
        left_arr = np.fromiter(left, dtype=np.int64)
        right_arr = np.fromiter(right, dtype=np.int64)
        products = np.unique(self.mul_table[np.ix_(left_arr, right_arr)])
        return self.unit_index in self.span(products)


@dataclass(frozen=True)
class RingElement:
    """Elemento con coordenadas reducidas y referencia a su anillo"""

    ring: FiniteRing = field(repr=False)
    coordinates: Tuple[int, ...]

    @property
    def index(self) -> int:
        return self.ring.index_of(self.coordinates)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    def __add__(self, other: "RingElement") -> "RingElement":
        return self.ring.element(np.add(self.coordinates, other.coordinates))

    def __neg__(self) -> "RingElement":
        return self.ring.element(np.negative(self.coordinates))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        product = self.ring.multiply([self.coordinates], [other.coordinates])[0]
        return self.ring.element(product)

    def __str__(self) -> str:
        return f"{self.ring}{list(self.coordinates)}"


@dataclass(frozen=True, eq=False)
class Subring:
    """Subanillo de `ambient` dado por su conjunto canónico de índices."""

    ambient: FiniteRing = field(repr=False)
    members: FrozenSet[int]
    label: str = ""

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subring):
            return NotImplemented
        return self.ambient is other.ambient and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.members))

    def __contains__(self, index: int) -> bool:
        return int(index) in self.members

    def __le__(self, other: "Subring") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subring") -> bool:
        return self.members < other.members

    def __str__(self) -> str:
        return self.label or f"Subring(order={self.order} of {self.ambient})"

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def member_array(self) -> np.ndarray:
        return np.array(self.sorted_members, dtype=np.int64)

    @cached_property
    def additive_basis(self) -> AbelianSubgroup:
        """Base cíclica obtenida de un conjunto generador mínimo voraz."""
        generators, span = [], frozenset({self.ambient.zero_index})
        for index in self.sorted_members:
            if index not in span:
                generators.append(self.ambient.coords(index))
                span = self.ambient.span([index], start=span)
            if len(span) == self.order:
                break
        return AbelianSubgroup.generated_by(generators, self.ambient.moduli)

    @cached_property
    def realization(self) -> "SubringRealization":
        return SubringRealization.of(self)

    def as_ring(self) -> FiniteRing:
        return self.realization.ring


@dataclass(frozen=True, eq=False)
class SubringRealization:
    """Un subanillo visto como FiniteRing propio, con la traducción de índices."""

    subring: Subring
    ring: FiniteRing
    to_ambient: np.ndarray
    from_ambient: Dict[int, int]

    @classmethod
    def of(cls, subring: Subring) -> "SubringRealization":
        ambient = subring.ambient
        basis = subring.additive_basis
        k = basis.rank
        basis_idx = [ambient.index_of(b) for b in basis.basis]

        # coordenadas propias de cada miembro
        own_moduli = basis.orders
        own_vectors = all_vectors(own_moduli)
        ambient_vectors = own_vectors @ np.asarray(basis.basis, dtype=np.int64).reshape(
            k, ambient.rank
        )
        to_ambient = ambient.indices_of(ambient_vectors)
        from_ambient = {int(a): i for i, a in enumerate(to_ambient)}

        structure = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                product = int(ambient.mul_table[basis_idx[i], basis_idx[j]])
                structure[i, j] = own_vectors[from_ambient[product]]
        unit = tuple(int(x) for x in own_vectors[from_ambient[ambient.unit_index]])
        ring = FiniteRing(tuple(own_moduli), structure, unit, name=str(subring))
        return cls(subring, ring, to_ambient, from_ambient)

    def index_in_ring(self, ambient_index: int) -> int:
        return self.from_ambient[int(ambient_index)]


@dataclass(frozen=True, eq=False)
class RingEmbedding:
    """Homomorfismo unital inyectivo dado por las imágenes de la base aditiva."""

    source: FiniteRing
    target: FiniteRing
    images: np.ndarray = field(repr=False)

    def apply(self, coords: Sequence[int]) -> Tuple[int, ...]:
        image = np.asarray(coords, dtype=np.int64) @ self.images
        return tuple(int(x) for x in self.target.reduce(image))

    @cached_property
    def index_map(self) -> np.ndarray:
        """Índice en el destino de cada elemento del origen."""
        return self.target.indices_of(self.source.elements @ self.images)

    @cached_property
    def image(self) -> Subring:
        members = frozenset(int(i) for i in self.index_map)
        return Subring(self.target, members, label=f"λ({self.source})")

    def problems(self) -> list:
        """Lista (vacía si es válida) de invariantes que fallan."""
        issues = []
        src, tgt = self.source, self.target
        for i, d in enumerate(src.moduli):
            if any(tgt.reduce(d * self.images[i])):
                issues.append(f"d_{i}·φ(e_{i}) != 0")
        for i in range(src.rank):
            for j in range(src.rank):
                lhs = tgt.multiply([self.images[i]], [self.images[j]])[0]
                rhs = tgt.reduce(src.structure[i, j] @ self.images)
                if not np.array_equal(lhs, rhs):
                    issues.append(f"φ(e_{i})φ(e_{j}) != φ(e_{i}e_{j})")
        if self.apply(src.unit) != tuple(tgt.unit):
            issues.append("φ(1) != 1")
        if len(set(self.index_map.tolist())) != src.order:
            issues.append("φ no es inyectiva")
        return issues

    def is_valid(self) -> bool:
        return not self.problems()

    def compose(self, other: "RingEmbedding") -> "RingEmbedding":
        """self ∘ other."""
        images = self.target.reduce(other.images @ self.images)
        return RingEmbedding(other.source, self.target, images)


RingLike = Union[FiniteRing, Subring]


def as_finite_ring(ring: RingLike) -> FiniteRing:
    return ring.as_ring() if isinstance(ring, Subring) else ring
