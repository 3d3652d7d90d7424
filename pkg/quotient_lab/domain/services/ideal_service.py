# quotient_lab/domain/services/ideal_service.py
"""Retículo de ideales derechos, clasificación densa/esencial y filtros de Gabriel."""

import logging
from collections import deque
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np

from quotient_lab.domain.models.errors import CapExceeded, InternalViolation
from quotient_lab.domain.models.ideals import (
    GabrielFilter,
    IdealClassification,
    RightIdeal,
)
from quotient_lab.domain.models.module import Submodule
from quotient_lab.domain.models.reports import ClauseResult
from quotient_lab.domain.models.ring import (
    FiniteRing,
    RingEmbedding,
    RingLike,
    as_finite_ring,
)
from quotient_lab.domain.services.ring_service import regular_elements
from quotient_lab.utils import config

logger = logging.getLogger(__name__)

Members = FrozenSet[int]


def enumerate_right_ideals(
    ring: RingLike, cap: Optional[int] = None
) -> Tuple[RightIdeal, ...]:
    """
    Todos los ideales derechos, ordenados por (orden, elementos).

    Búsqueda en anchura desde 0: cada ideal I se extiende a I + xR.

    Raises:
        CapExceeded: si el retículo supera `cap` (QL_IDEAL_CAP por defecto)
    """
    cap = config.QL_IDEAL_CAP if cap is None else cap
    return _enumerate(as_finite_ring(ring), cap)


@lru_cache(maxsize=256)
def _enumerate(ring: FiniteRing, cap: int) -> Tuple[RightIdeal, ...]:
    M = ring.mul_table
    zero = frozenset({ring.zero_index})
    found = {zero}
    queue = deque([zero])
    while queue:
        current = queue.popleft()
        for x in range(ring.order):
            if x in current:
                continue
            extended = ring.span(M[x], start=current)
            if extended in found:
                continue
            found.add(extended)
            if len(found) > cap:
                logger.warning(f"Retículo de ideales de {ring} supera {cap}")
                raise CapExceeded(cap, "ideales derechos")
            queue.append(extended)
    ideals = sorted(
        (RightIdeal(ring, members) for members in found), key=RightIdeal.sort_key
    )
    logger.debug(f"{ring}: {len(ideals)} ideales derechos")
    return tuple(ideals)


def right_ideal_generated(ring: FiniteRing, seeds: Iterable[int]) -> RightIdeal:
    """Menor ideal derecho que contiene `seeds` (suma de los x·R)."""
    M = ring.mul_table
    members = frozenset({ring.zero_index})
    for x in seeds:
        if int(x) not in members:
            members = ring.span(M[int(x)], start=members)
    return RightIdeal(ring, members)


def colon_indices(ring: FiniteRing, members: Iterable[int], x: int) -> Members:
    """(I : x) = {r : x·r ∈ I} sobre índices."""
    target = np.fromiter(members, dtype=np.int64)
    return frozenset(int(r) for r in np.flatnonzero(np.isin(ring.mul_table[x], target)))


def colon(sub: Union[RightIdeal, Submodule], m: int) -> RightIdeal:
    """(N : m) = {r ∈ R : m·r ∈ N} para un submódulo N y m en el módulo."""
    if isinstance(sub, RightIdeal):
        return RightIdeal(sub.ring, colon_indices(sub.ring, sub.members, m))
    row = sub.module.action_table[m]
    inside = np.isin(row, np.fromiter(sub.members, dtype=np.int64))
    return RightIdeal(sub.module.ring, frozenset(int(r) for r in np.flatnonzero(inside)))


def is_essential(ring: FiniteRing, members: Iterable[int]) -> bool:
    """I esencial: para todo x != 0 existe r con x·r ∈ I \\ {0}."""
    M = ring.mul_table
    hits = np.isin(M, np.fromiter(members, dtype=np.int64)) & (M != ring.zero_index)
    nonzero = np.arange(ring.order) != ring.zero_index
    return bool(hits[nonzero].any(axis=1).all())


def is_dense(ring: FiniteRing, members: Iterable[int]) -> bool:
    """I denso: para todo x y todo y != 0 existe r con x·r ∈ I e y·r != 0."""
    M = ring.mul_table
    lands = np.isin(M, np.fromiter(members, dtype=np.int64)).astype(np.int64)
    survives = (M != ring.zero_index).astype(np.int64)
    nonzero = np.arange(ring.order) != ring.zero_index
    witnesses = lands @ survives[nonzero].T
    return bool((witnesses > 0).all())


@lru_cache(maxsize=4096)
def _classify(ring: FiniteRing, members: Members) -> IdealClassification:
    return IdealClassification(is_dense(ring, members), is_essential(ring, members))


def classify_right_ideal(ideal: RightIdeal) -> IdealClassification:
    return _classify(ideal.ring, ideal.members)


def left_annihilator(ring: FiniteRing, members: Iterable[int]) -> Members:
    """{x : x·I = 0}."""
    cols = np.fromiter(members, dtype=np.int64)
    rows = (ring.mul_table[:, cols] == ring.zero_index).all(axis=1)
    return frozenset(int(x) for x in np.flatnonzero(rows))


def lambek_filter(ring: RingLike) -> GabrielFilter:
    """Filtro de los ideales derechos densos."""
    R = as_finite_ring(ring)
    dense = [I for I in enumerate_right_ideals(R) if classify_right_ideal(I).dense]
    return GabrielFilter.of(R, dense, name=f"Lambek({R})")


def minimal_dense_ideal(ring: RingLike) -> RightIdeal:
    """
    D = intersección de todos los ideales derechos densos.

    Raises:
        InternalViolation: si D no resulta denso
    """
    R = as_finite_ring(ring)
    D = lambek_filter(R).minimum
    if not is_dense(R, D.members):
        raise InternalViolation(
            f"{R}: la intersección de los ideales densos no es densa"
        )
    logger.debug(f"{R}: ideal denso mínimo de orden {D.order}")
    return RightIdeal(R, D.members, label="D")


def jacobson_radical(ring: RingLike) -> Members:
    """Intersección de los ideales derechos maximales."""
    R = as_finite_ring(ring)
    proper = [I for I in enumerate_right_ideals(R) if not I.is_whole()]
    maximal = [I for I in proper if not any(I < J for J in proper)]
    radical = frozenset(range(R.order))
    for ideal in maximal:
        radical &= ideal.members
    return radical


def filter_of_extension(emb: RingEmbedding, name: str = "") -> GabrielFilter:
    """{I : I·S = S}, con I·S el subgrupo generado por λ(I)·S."""
    R, S = emb.source, emb.target
    everything = range(S.order)
    members = [
        I
        for I in enumerate_right_ideals(R)
        if S.ideal_product_contains_unit(
            emb.index_map[list(I.sorted_members)], everything
        )
    ]
    return GabrielFilter.of(R, members, name=name or f"τ_{S}")


def morita_filter(emb: RingEmbedding) -> GabrielFilter:
    """{I : (I : r)·S = S para todo r ∈ R}."""
    R, S = emb.source, emb.target
    everything = range(S.order)
    spans: Dict[Members, bool] = {}

    def spans_target(members: Members) -> bool:
        if members not in spans:
            lam = emb.index_map[sorted(members)]
            spans[members] = S.ideal_product_contains_unit(lam, everything)
        return spans[members]

    members = [
        I
        for I in enumerate_right_ideals(R)
        if all(spans_target(colon_indices(R, I.members, r)) for r in range(R.order))
    ]
    return GabrielFilter.of(R, members, name=f"Morita({S})")


def goldie_filter(ring: RingLike) -> GabrielFilter:
    """
    {I : R/I es de torsión de Goldie}, es decir Z_2(R/I) = R/I.

    Z_1 = {x : (I : x) esencial} es la preimagen de Z(R/I) y
    Z_2 = {x : (Z_1 : x) esencial} la de Z_2(R/I).
    """
    R = as_finite_ring(ring)

    def singular_preimage(members: Members) -> Members:
        return frozenset(
            x for x in range(R.order) if is_essential(R, colon_indices(R, members, x))
        )

    members = [
        I
        for I in enumerate_right_ideals(R)
        if len(singular_preimage(singular_preimage(I.members))) == R.order
    ]
    return GabrielFilter.of(R, members, name=f"Goldie({R})")


def classical_filter(ring: RingLike) -> GabrielFilter:
    """{I : I contiene un elemento regular}."""
    R = as_finite_ring(ring)
    regular = {element.element.index for element in regular_elements(R)}
    members = [I for I in enumerate_right_ideals(R) if regular & I.members]
    return GabrielFilter.of(R, members, name=f"Clásico({R})")


def trivial_filter(ring: RingLike) -> GabrielFilter:
    R = as_finite_ring(ring)
    whole = [I for I in enumerate_right_ideals(R) if I.is_whole()]
    return GabrielFilter.of(R, whole, name="{R}")


def filter_from_members(
    ring: FiniteRing, sets: Iterable[Iterable[int]], name: str = ""
) -> GabrielFilter:
    """Filtro a partir de conjuntos de índices (que deben ser ideales del retículo)."""
    wanted = {frozenset(s) for s in sets}
    members = [I for I in enumerate_right_ideals(ring) if I.members in wanted]
    if len(members) != len(wanted):
        raise ValueError("algún conjunto no es un ideal derecho")
    return GabrielFilter.of(ring, members, name=name)


def check_gabriel_axioms(F: GabrielFilter) -> ClauseResult:
    """Cierre hacia arriba, T1, T2 e intersecciones; devuelve la primera violación."""
    R = F.ring
    lattice = enumerate_right_ideals(R)
    name = f"axiomas de Gabriel de {F}"
    if not F.members:
        return ClauseResult(name, False, "filtro vacío")

    for I in F:
        for J in lattice:
            if I <= J and J not in F:
                return ClauseResult(name, False, f"cierre superior: {I} ⊆ {J}")

    for I in F:
        for r in range(R.order):
            colon_set = colon_indices(R, I.members, r)
            if colon_set not in F:
                return ClauseResult(name, False, f"T1: ({I} : {R.coords(r)}) ∉ filtro")

    for J in lattice:
        if J in F:
            continue
        good = frozenset(r for r in range(R.order) if colon_indices(R, J.members, r) in F)
        for I in F:
            if I.members <= good:
                return ClauseResult(name, False, f"T2: {J} ∉ filtro pese a {I}")

    members = list(F)
    for a, I in enumerate(members):
        for J in members[a + 1 :]:
            if (I.members & J.members) not in F:
                return ClauseResult(name, False, f"intersección {I} ∩ {J}")
    return ClauseResult(name, True)


def ideal_rows(ring: RingLike) -> List[Dict[str, object]]:
    """Filas del retículo: orden, densidad, esencialidad y filtro de Goldie."""
    R = as_finite_ring(ring)
    goldie = goldie_filter(R)
    rows = []
    for position, ideal in enumerate(enumerate_right_ideals(R)):
        flags = classify_right_ideal(ideal)
        rows.append(
            {
                "ideal": position,
                "order": ideal.order,
                "dense": flags.dense,
                "essential": flags.essential,
                "goldie": ideal in goldie,
            }
        )
    return rows
