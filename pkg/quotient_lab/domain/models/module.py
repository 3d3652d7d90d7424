# quotient_lab/domain/models/module.py
"""Módulos derechos finitos sobre un FiniteRing.

Un módulo es Z_{m_1} x ... x Z_{m_t} con una matriz de acción A_i por cada
elemento e_i de la base del anillo: m·e_i = m @ A_i (convención de filas).
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from quotient_lab.domain.models.abelian import (
    AbelianSubgroup,
    all_vectors,
    radix_weights,
    reduce_mod,
    span_indices,
)
from quotient_lab.domain.models.errors import ModuleValidationError
from quotient_lab.domain.models.ring import FiniteRing
from quotient_lab.utils import config


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """Módulo derecho finito. `action[i]` es la matriz t x t de m -> m·e_i."""

    ring: FiniteRing = field(repr=False)
    moduli: Tuple[int, ...]
    action: np.ndarray = field(repr=False)
    name: str = ""

    @classmethod
    def regular(cls, ring: FiniteRing) -> "FiniteModule":
        """R como módulo derecho sobre sí mismo: A_i = matriz de x -> x·e_i."""
        action = np.transpose(ring.structure, (1, 0, 2)).copy()
        return cls(ring, ring.moduli, action, name=f"{ring}_{{{ring}}}")

    def __str__(self) -> str:
        return self.name or f"Module(order={self.order} over {self.ring})"

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return int(np.prod(self.moduli, dtype=object)) if self.moduli else 1

    @cached_property
    def _moduli_array(self) -> np.ndarray:
        return np.array(self.moduli, dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        if self.order > config.QL_ELEMENT_LIMIT:
            raise ValueError(
                f"{self}: orden {self.order} supera QL_ELEMENT_LIMIT="
                f"{config.QL_ELEMENT_LIMIT}"
            )
        return all_vectors(self.moduli)

    def reduce(self, vectors) -> np.ndarray:
        return np.mod(np.asarray(vectors, dtype=np.int64), self._moduli_array)

    def index_of(self, vector: Sequence[int]) -> int:
        return int(self.reduce(np.array(vector)) @ radix_weights(self.moduli))

    def indices_of(self, vectors) -> np.ndarray:
        return self.reduce(vectors) @ radix_weights(self.moduli)

    def coords(self, index: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.elements[index])

    def action_matrix(self, r: Sequence[int]) -> np.ndarray:
        """Matriz de m -> m·r para r dado en coordenadas del anillo."""
        return np.einsum("i,ijk->jk", np.asarray(r, dtype=np.int64), self.action)

    def act(self, vectors, r: Sequence[int]) -> np.ndarray:
        return self.reduce(np.atleast_2d(vectors) @ self.action_matrix(r))

    @cached_property
    def action_table(self) -> np.ndarray:
        """Tabla |M| x |R| con el índice de m·r."""
        E, R = self.elements, self.ring.elements
        products = np.einsum("at,bi,itu->abu", E, R, self.action)
        return self.indices_of(products)

    @cached_property
    def add_table(self) -> np.ndarray:
        E = self.elements
        return self.indices_of(E[:, None, :] + E[None, :, :])

    def span(self, seeds: Iterable[int], start=None) -> FrozenSet[int]:
        return span_indices(self.add_table, seeds, start)

    def submodule_generated(self, seeds: Iterable[int]) -> "Submodule":
        """Menor submódulo que contiene los índices `seeds`."""
        current = self.span(seeds)
        while True:
            members = np.fromiter(current, dtype=np.int64)
            products = set(np.unique(self.action_table[members]).tolist())
            if products <= current:
                return Submodule(self, current)
            current = self.span(products - current, start=current)

    def problems(self) -> List[str]:
        """Invariantes de módulo que fallan (lista vacía si es válido)."""
        issues = []
        ring, A = self.ring, self.action
        k, t = ring.rank, self.rank
        if A.shape != (k, t, t):
            return [f"'action' debe tener forma ({k}, {t}, {t}) y tiene {A.shape}"]
        d = self._moduli_array
        for a, m in enumerate(self.moduli):
            if any(self.reduce(m * A[:, a, :]).ravel()):
                issues.append(f"m_{a}·(g_{a}·e_i) != 0")
        for i, di in enumerate(ring.moduli):
            if any(self.reduce(di * A[i]).ravel()):
                issues.append(f"d_{i}·A_{i} != 0")
        for i in range(k):
            for j in range(k):
                lhs = np.mod(A[i] @ A[j], d)
                rhs = np.mod(np.einsum("l,lab->ab", ring.structure[i, j], A), d)
                if not np.array_equal(lhs, rhs):
                    issues.append(f"(m·e_{i})·e_{j} != m·(e_{i}e_{j})")
        unit = np.mod(np.einsum("i,iab->ab", np.asarray(ring.unit), A), d)
        if not np.array_equal(unit, np.mod(np.eye(t, dtype=np.int64), d)):
            issues.append("la unidad no actúa como la identidad")
        return issues

    def validate(self) -> "FiniteModule":
        issues = self.problems()
        if issues:
            raise ModuleValidationError(f"{self}: {issues[0]}")
        return self


@dataclass(frozen=True, eq=False)
class Submodule:
    """Submódulo dado por su conjunto canónico de índices en `module`."""

    module: FiniteModule = field(repr=False)
    members: FrozenSet[int]
    label: str = ""

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.module is other.module and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.module), self.members))

    def __contains__(self, index: int) -> bool:
        return int(index) in self.members

    def __le__(self, other: "Submodule") -> bool:
        return self.members <= other.members

    def __str__(self) -> str:
        return self.label or f"Submodule(order={self.order} of {self.module})"

    @property
    def order(self) -> int:
        return len(self.members)

    def is_zero(self) -> bool:
        return self.members == frozenset({0})

    @cached_property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def additive_basis(self) -> AbelianSubgroup:
        generators, span = [], frozenset({0})
        for index in self.sorted_members:
            if index not in span:
                generators.append(self.module.coords(index))
                span = self.module.span([index], start=span)
            if len(span) == self.order:
                break
        return AbelianSubgroup.generated_by(generators, self.module.moduli)

    @cached_property
    def generator_rows(self) -> np.ndarray:
        basis = self.additive_basis
        rows = np.asarray(basis.basis, dtype=np.int64)
        return rows.reshape(basis.rank, self.module.rank)

    def as_module(self) -> FiniteModule:
        """El submódulo como FiniteModule propio sobre su base cíclica."""
        return self._own_module

    @cached_property
    def _own_module(self) -> FiniteModule:
        basis = self.additive_basis
        k, t = self.module.ring.rank, basis.rank
        action = np.zeros((k, t, t), dtype=np.int64)
        for i in range(k):
            images = self.module.reduce(self.generator_rows @ self.module.action[i])
            for a, image in enumerate(images):
                coords = basis.coordinates(image)
                if coords is None:
                    raise ModuleValidationError(f"{self}: no es cerrado bajo la acción")
                action[i, a] = coords
        return FiniteModule(self.module.ring, tuple(basis.orders), action, name=str(self))

    def inclusion(self) -> "ModuleMap":
        return ModuleMap(self.as_module(), self.module, self.generator_rows)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """Homomorfismo de módulos dado por su matriz sobre los generadores aditivos."""

    source: FiniteModule
    target: FiniteModule
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=np.int64).reshape(
            self.source.rank, self.target.rank
        )
        object.__setattr__(self, "matrix", self.target.reduce(matrix))

    def apply(self, vectors) -> np.ndarray:
        return self.target.reduce(np.atleast_2d(vectors) @ self.matrix)

    def problems(self) -> List[str]:
        issues = []
        S, T, F = self.source, self.target, self.matrix
        for a, m in enumerate(S.moduli):
            if any(T.reduce(m * F[a])):
                issues.append(f"m_{a}·f(g_{a}) != 0")
        for i in range(S.ring.rank):
            if not np.array_equal(T.reduce(S.action[i] @ F), T.reduce(F @ T.action[i])):
                issues.append(f"f(m·e_{i}) != f(m)·e_{i}")
        return issues

    def is_valid(self) -> bool:
        return not self.problems()

    @cached_property
    def image(self) -> AbelianSubgroup:
        return AbelianSubgroup.generated_by(self.matrix, self.target.moduli)

    def is_surjective(self) -> bool:
        return self.image.order == self.target.order

    def is_injective(self) -> bool:
        return self.image.order == self.source.order

    def kernel(self) -> Submodule:
        """Núcleo calculado elemento a elemento."""
        images = self.target.indices_of(self.apply(self.source.elements))
        members = frozenset(int(i) for i in np.flatnonzero(images == 0))
        return Submodule(self.source, members, label=f"ker({self.source}->{self.target})")

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other."""
        return ModuleMap(other.source, self.target, other.matrix @ self.matrix)


@dataclass(frozen=True, eq=False)
class Presentation:
    """R^{n_1} -> R^{n_0} -> M -> 0.

    `relations[r, a]` es el coeficiente (en coordenadas del anillo) del
    generador libre a en la relación r; `generator_images[a]` es la imagen
    del generador libre a en M.
    """

    module: FiniteModule
    relations: np.ndarray = field(repr=False)
    generator_images: np.ndarray = field(repr=False)

    @property
    def free_rank(self) -> int:
        return self.generator_images.shape[0]

    @property
    def relation_count(self) -> int:
        return self.relations.shape[0]


@dataclass(frozen=True, eq=False)
class HomGroup:
    """Hom_R(M, N) como subgrupo de ⊕ Z_{n_b} (una copia por generador de M)."""

    source: FiniteModule
    target: FiniteModule
    group: AbelianSubgroup

    @property
    def order(self) -> int:
        return self.group.order

    def _as_map(self, flat) -> ModuleMap:
        matrix = np.asarray(list(flat), dtype=np.int64).reshape(
            self.source.rank, self.target.rank
        )
        return ModuleMap(self.source, self.target, matrix)

    def generators(self) -> List[ModuleMap]:
        """Generadores cíclicos de Hom (uno por sumando)."""
        return [self._as_map(row) for row in self.group.basis]

    def maps(self, limit: Optional[int] = None) -> Iterator[ModuleMap]:
        """Todos los homomorfismos, con la guarda QL_HOM_LISTING_LIMIT."""
        limit = config.QL_HOM_LISTING_LIMIT if limit is None else limit
        for flat in self.group.elements(limit):
            yield self._as_map(flat)

    def contains(self, matrix) -> bool:
        flat = reduce_mod(np.asarray(matrix).ravel(), self.group.moduli)
        return self.group.contains(flat)
