# quotient_lab/domain/models/abelian.py
"""Grupos abelianos finitos Z_{m_1} x ... x Z_{m_t} y sus subgrupos y cocientes."""

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from quotient_lab.domain.models.integer_matrix import (
    LeftSolver,
    as_integer_matrix,
    left_kernel,
    normal_form,
)


def reduce_mod(vector, moduli: Sequence[int]) -> Tuple[int, ...]:
    """Reduce coordenadas a su forma canónica en [0, m_i)."""
    return tuple(int(x) % int(m) for x, m in zip(vector, moduli))


def all_vectors(moduli: Sequence[int]) -> np.ndarray:
    """Todos los elementos de Z_{m_1} x ... x Z_{m_t} en orden lexicográfico."""
    if not moduli:
        return np.zeros((1, 0), dtype=np.int64)
    grid = itertools.product(*(range(m) for m in moduli))
    return np.array(list(grid), dtype=np.int64).reshape(-1, len(moduli))


def radix_weights(moduli: Sequence[int]) -> np.ndarray:
    """Pesos de numeración mixta compatibles con `all_vectors`."""
    weights = np.ones(len(moduli), dtype=np.int64)
    for i in range(len(moduli) - 2, -1, -1):
        weights[i] = weights[i + 1] * moduli[i + 1]
    return weights


def span_indices(
    add_table: np.ndarray, seeds: Iterable[int], start: Optional[Iterable[int]] = None
) -> FrozenSet[int]:
    """Subgrupo generado por `seeds` (y por `start`, ya cerrado) sobre índices.

    El índice 0 es el neutro; se recorren las clases laterales de cada semilla.
    """
    members = set(start) if start is not None else {0}
    for g in seeds:
        g = int(g)
        if g in members:
            continue
        coset = np.fromiter(members, dtype=np.int64)
        while True:
            coset = add_table[coset, g]
            if int(coset[0]) in members:
                break
            members.update(coset.tolist())
    return frozenset(members)


def diagonal_relations(moduli: Sequence[int]) -> np.ndarray:
    return np.diag(np.array(list(moduli), dtype=object)).reshape(
        len(moduli), len(moduli)
    )


@dataclass(frozen=True, eq=False)
class AbelianSubgroup:
    """Subgrupo de Z_m generado por filas, con una base de sumandos cíclicos.

    `basis[j]` tiene orden `orders[j]` y el subgrupo es la suma directa
    interna de los <basis[j]>.
    """

    moduli: Tuple[int, ...]
    generators: np.ndarray
    basis: np.ndarray = field(repr=False)
    orders: Tuple[int, ...]
    _kernel_tinv: np.ndarray = field(repr=False)
    _kept: Tuple[int, ...] = field(repr=False)

    @classmethod
    def generated_by(cls, rows, moduli: Sequence[int]) -> "AbelianSubgroup":
        moduli = tuple(int(m) for m in moduli)
        t = len(moduli)
        G = as_integer_matrix(rows, t)
        G = np.array([reduce_mod(g, moduli) for g in G], dtype=object).reshape(len(G), t)
        g = G.shape[0]
        if g == 0:
            empty = np.zeros((0, t), dtype=object)
            return cls(moduli, empty, empty, (), np.zeros((0, 0), dtype=object), ())

        # K = {z : z G = 0 en Z_m}; el subgrupo es Z^g / K
        stacked = np.vstack([G, diagonal_relations(moduli)]) if t else G
        relations = left_kernel(stacked)[:, :g]
        if relations.shape[0] == 0:
            relations = np.zeros((0, g), dtype=object)
        _, D, T, _, Tinv = normal_form(relations, return_inverses=True)

        kept, orders, basis = [], [], []
        for j in range(g):
            d = abs(int(D[j, j])) if j < D.shape[0] else 0
            if d == 1:
                continue
            kept.append(j)
            orders.append(d)
            basis.append(reduce_mod(T[j] @ G, moduli))
        basis_matrix = np.array(basis, dtype=object).reshape(len(basis), t)
        return cls(moduli, G, basis_matrix, tuple(orders), Tinv, tuple(kept))

    @property
    def order(self) -> int:
        return int(np.prod(self.orders, dtype=object)) if self.orders else 1

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def _solver(self) -> LeftSolver:
        stacked = np.vstack([self.generators, diagonal_relations(self.moduli)])
        return LeftSolver(stacked)

    def coordinates(self, vector) -> Optional[Tuple[int, ...]]:
        """Coordenadas de `vector` en la base cíclica, o None si no pertenece."""
        if not self.orders:
            trivial = all(int(x) % m == 0 for x, m in zip(vector, self.moduli))
            return () if trivial else None
        w = self._solver.solve([int(x) for x in vector])
        if w is None:
            return None
        z = w[: self.generators.shape[0]] @ self._kernel_tinv
        return tuple(int(z[j]) % c for j, c in zip(self._kept, self.orders))

    def contains(self, vector) -> bool:
        return self.coordinates(vector) is not None

    def combination(self, coordinates: Sequence[int]) -> Tuple[int, ...]:
        if not self.orders:
            return tuple(0 for _ in self.moduli)
        vector = np.array(list(coordinates), dtype=object) @ self.basis
        return reduce_mod(vector, self.moduli)

    def elements(self, limit: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
        if limit is not None and self.order > limit:
            raise ValueError(f"Subgrupo de orden {self.order} supera el límite {limit}")
        for coords in itertools.product(*(range(c) for c in self.orders)):
            yield self.combination(coords)


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """Cociente Z_m / <relaciones> en forma diagonal.

    La proyección es x -> (x @ projection) mod orders y `lifts[j]` es un
    representante del generador j.
    """

    moduli: Tuple[int, ...]
    orders: Tuple[int, ...]
    projection: np.ndarray = field(repr=False)
    lifts: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, relations, moduli: Sequence[int]) -> "QuotientGroup":
        moduli = tuple(int(m) for m in moduli)
        t = len(moduli)
        R = as_integer_matrix(relations, t)
        stacked = np.vstack([R.reshape(R.shape[0], t), diagonal_relations(moduli)])
        _, D, T, _, Tinv = normal_form(stacked, return_inverses=True)

        kept: List[int] = []
        orders: List[int] = []
        for j in range(t):
            d = abs(int(D[j, j]))
            if d != 1:
                kept.append(j)
                orders.append(d)
        projection = Tinv[:, kept].reshape(t, len(kept))
        lifts = T[kept].reshape(len(kept), t)
        return cls(moduli, tuple(orders), projection, lifts)

    @property
    def order(self) -> int:
        return int(np.prod(self.orders, dtype=object)) if self.orders else 1

    def project(self, vector) -> Tuple[int, ...]:
        if not self.orders:
            return ()
        image = np.array([int(x) for x in vector], dtype=object) @ self.projection
        return reduce_mod(image, self.orders)

    def project_rows(self, rows) -> np.ndarray:
        projected = [self.project(r) for r in rows]
        return np.array(projected, dtype=object).reshape(len(projected), len(self.orders))
