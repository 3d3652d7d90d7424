# quotient_lab/domain/models/ideals.py
"""Ideales derechos y filtros de Gabriel como conjuntos explícitos."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, Tuple, Union

from quotient_lab.domain.models.module import FiniteModule, Submodule
from quotient_lab.domain.models.ring import FiniteRing


@dataclass(frozen=True, eq=False)
class RightIdeal:
    """Ideal derecho de `ring` dado por sus índices de elementos."""

    ring: FiniteRing = field(repr=False)
    members: FrozenSet[int]
    label: str = ""

    def __eq__(self, other) -> bool:
        if not isinstance(other, RightIdeal):
            return NotImplemented
        return self.ring is other.ring and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))

    def __contains__(self, index: int) -> bool:
        return int(index) in self.members

    def __le__(self, other: "RightIdeal") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "RightIdeal") -> bool:
        return self.members < other.members

    def __str__(self) -> str:
        if self.label:
            return self.label
        if self.is_zero():
            return "0"
        if self.is_whole():
            return str(self.ring)
        return f"I(order={self.order})"

    @property
    def order(self) -> int:
        return len(self.members)

    def is_zero(self) -> bool:
        return self.members == frozenset({self.ring.zero_index})

    def is_whole(self) -> bool:
        return len(self.members) == self.ring.order

    @cached_property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def submodule(self) -> Submodule:
        return Submodule(FiniteModule.regular(self.ring), self.members, label=str(self))

    def as_module(self) -> FiniteModule:
        return self.submodule.as_module()

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.order, self.sorted_members)


IdealLike = Union[RightIdeal, FrozenSet[int]]


def _members(ideal: IdealLike) -> FrozenSet[int]:
    return ideal.members if isinstance(ideal, RightIdeal) else frozenset(ideal)


@dataclass(frozen=True, eq=False)
class GabrielFilter:
    """Conjunto explícito de ideales derechos, cerrado hacia arriba en el retículo."""

    ring: FiniteRing = field(repr=False)
    members: FrozenSet[RightIdeal]
    name: str = ""

    def __eq__(self, other) -> bool:
        if not isinstance(other, GabrielFilter):
            return NotImplemented
        return self.ring is other.ring and self.member_sets == other.member_sets

    def __hash__(self) -> int:
        return hash((id(self.ring), self.member_sets))

    def __contains__(self, ideal: IdealLike) -> bool:
        return _members(ideal) in self.member_sets

    def __iter__(self) -> Iterator[RightIdeal]:
        return iter(sorted(self.members, key=RightIdeal.sort_key))

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "GabrielFilter") -> bool:
        return self.member_sets <= other.member_sets

    def __str__(self) -> str:
        return self.name or f"Filter({len(self)} ideales de {self.ring})"

    @cached_property
    def member_sets(self) -> FrozenSet[FrozenSet[int]]:
        return frozenset(ideal.members for ideal in self.members)

    @cached_property
    def basis(self) -> Tuple[RightIdeal, ...]:
        """Miembros minimales."""
        ordered = sorted(self.members, key=RightIdeal.sort_key)
        return tuple(
            ideal for ideal in ordered if not any(other < ideal for other in ordered)
        )

    @cached_property
    def minimum(self) -> RightIdeal:
        """Intersección de todos los miembros (pertenece al filtro si es cerrado)."""
        members = frozenset(range(self.ring.order))
        for ideal in self.members:
            members &= ideal.members
        return RightIdeal(self.ring, members)

    def renamed(self, name: str) -> "GabrielFilter":
        return GabrielFilter(self.ring, self.members, name)

    @classmethod
    def of(
        cls, ring: FiniteRing, ideals: Iterable[RightIdeal], name: str = ""
    ) -> "GabrielFilter":
        return cls(ring, frozenset(ideals), name)


@dataclass(frozen=True)
class IdealClassification:
    dense: bool
    essential: bool
