# quotient_lab/domain/services/ring_service.py
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Union

import numpy as np

from quotient_lab.domain.models.errors import (
    AssociativityViolation,
    CapExceeded,
    CompatibilityViolation,
    DefinitionError,
    UnitViolation,
)
from quotient_lab.domain.models.ring import (
    FiniteRing,
    RingElement,
    RingEmbedding,
    RingLike,
    Subring,
    as_finite_ring,
)
from quotient_lab.utils import config

logger = logging.getLogger(__name__)

Seed = Union[int, RingElement]


def validate_ring(definition: Mapping[str, Any]) -> FiniteRing:
    """
    Valida datos crudos de constantes de estructura y construye el anillo.

    Args:
        definition: diccionario con 'moduli', 'unit', 'mul' y opcionalmente 'name'

    Returns:
        FiniteRing validado

    Raises:
        DefinitionError, CompatibilityViolation, AssociativityViolation, UnitViolation
    """
    name = str(definition.get("name", ""))
    try:
        moduli = tuple(int(m) for m in definition["moduli"])
        unit = tuple(int(u) for u in definition["unit"])
        mul = np.array(definition["mul"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as e:
        raise DefinitionError(f"definición incompleta o mal formada: {e}") from e

    k = len(moduli)
    if k == 0 or any(m <= 0 for m in moduli):
        raise DefinitionError(f"los módulos deben ser enteros positivos: {moduli}")
    if mul.shape != (k, k, k):
        raise DefinitionError(
            f"'mul' debe tener forma ({k}, {k}, {k}) y tiene {mul.shape}"
        )
    if len(unit) != k:
        raise DefinitionError(f"'unit' debe tener {k} coordenadas")

    unit = tuple(u % m for u, m in zip(unit, moduli))
    ring = FiniteRing(moduli, np.mod(mul, moduli), unit, name)
    check_ring_axioms(ring)
    logger.debug(f"Anillo {ring} validado (orden {ring.order})")
    return ring


def check_ring_axioms(ring: FiniteRing) -> None:
    """Compatibilidad, asociatividad en ternas de la base y unidad."""
    c, d, k = ring.structure, np.array(ring.moduli, dtype=np.int64), ring.rank

    for i in range(k):
        for j in range(k):
            if (np.mod(d[i] * c[i, j], d) != 0).any() or (
                np.mod(d[j] * c[i, j], d) != 0
            ).any():
                raise CompatibilityViolation(i, j)

    # (e_i e_j) e_l = sum_m c[i,j,m] c[m,l]  y  e_i (e_j e_l) = sum_m c[j,l,m] c[i,m]
    left = np.mod(np.einsum("ijm,mln->ijln", c, c), d)
    right = np.mod(np.einsum("jlm,imn->ijln", c, c), d)
    bad = np.argwhere((left != right).any(axis=-1))
    if len(bad):
        i, j, l = (int(x) for x in bad[0])  # noqa: E741
        raise AssociativityViolation(i, j, l)

    u = np.array(ring.unit, dtype=np.int64)
    identity = np.mod(np.eye(k, dtype=np.int64), d)
    left_unit = np.mod(np.einsum("m,mik->ik", u, c), d)
    right_unit = np.mod(np.einsum("m,imk->ik", u, c), d)
    for i in range(k):
        if not (np.array_equal(left_unit[i], identity[i]) and np.array_equal(
            right_unit[i], identity[i]
        )):
            raise UnitViolation(i)


def full_subring(ring: FiniteRing, label: str = "") -> Subring:
    return Subring(ring, frozenset(range(ring.order)), label=label or str(ring))


def _seed_index(seed: Seed) -> int:
    return seed.index if isinstance(seed, RingElement) else int(seed)


def closure_indices(ring: FiniteRing, seeds: Iterable[int]) -> frozenset:
    """Menor subconjunto cerrado bajo +, − y · que contiene seeds y la unidad."""
    current = ring.span(set(seeds) | {ring.unit_index})
    while True:
        members = np.fromiter(current, dtype=np.int64)
        products = set(np.unique(ring.mul_table[np.ix_(members, members)]).tolist())
        if products <= current:
            return current
        current = ring.span(products - current, start=current)


def subring_generated(ambient: RingLike, seeds: Iterable[Seed]) -> Subring:
    """
    Subanillo generado por `seeds` dentro de `ambient`.

    Si `ambient` es un Subring, la clausura se calcula en su anillo
    ambiente y se exige que las semillas pertenezcan a él.
    """
    if isinstance(ambient, Subring):
        ring = ambient.ambient
        indices = [_seed_index(s) for s in seeds]
        outside = [i for i in indices if i not in ambient]
        if outside:
            raise ValueError(f"semillas fuera de {ambient}: {outside}")
    else:
        ring = ambient
        indices = [_seed_index(s) for s in seeds]
    return Subring(ring, closure_indices(ring, indices))


def enumerate_intermediate_subrings(
    emb: RingEmbedding, cap: Optional[int] = None
) -> Set[Subring]:
    """
    Todos los subanillos T con imagen(R) ⊆ T ⊆ S.

    Búsqueda en anchura sobre extensiones por un elemento, deduplicada por el
    conjunto canónico de elementos.

    Raises:
        CapExceeded: si el número de subanillos supera `cap`
    """
    cap = config.QL_CAP if cap is None else cap
    target = emb.target
    bottom = Subring(target, closure_indices(target, emb.index_map.tolist()))
    found: Dict[frozenset, Subring] = {bottom.members: bottom}
    queue = deque([bottom])

    while queue:
        current = queue.popleft()
        for s in range(target.order):
            if s in current.members:
                continue
            members = closure_indices(target, set(current.members) | {s})
            if members in found:
                continue
            found[members] = Subring(target, members)
            if len(found) > cap:
                logger.warning(f"Enumeración de subanillos de {target} supera {cap}")
                raise CapExceeded(cap, "subanillos intermedios")
            queue.append(found[members])

    logger.debug(f"{len(found)} subanillos intermedios entre {emb.source} y {target}")
    return set(found.values())


def is_von_neumann_regular(ring: RingLike) -> bool:
    """True si para todo a existe x con a·x·a = a (búsqueda exhaustiva)."""
    R = as_finite_ring(ring)
    M = R.mul_table
    a = np.arange(R.order)[:, None]
    axa = M[M, a]
    return bool((axa == a).any(axis=1).all())


def is_semisimple(ring: RingLike) -> bool:
    """Radical de Jacobson nulo (intersección de los ideales derechos maximales)."""
    from quotient_lab.domain.services.ideal_service import jacobson_radical

    return jacobson_radical(as_finite_ring(ring)) == frozenset({0})


@dataclass(frozen=True)
class RegularElement:
    element: RingElement
    is_unit: bool


def regular_elements(ring: FiniteRing) -> List[RegularElement]:
    """
    Elementos que no son divisores de cero por ningún lado, con su marca de unidad.

    En un anillo finito todo elemento regular es unidad, de modo que el anillo
    clásico de cocientes coincide con R.
    """
    M = ring.mul_table
    zero = ring.zero_index
    nonzero = np.arange(ring.order) != zero
    left_regular = ~((M[:, nonzero] == zero).any(axis=1))
    right_regular = ~((M[nonzero, :] == zero).any(axis=0))
    regular = np.flatnonzero(left_regular & right_regular)

    result = []
    for a in regular:
        right_inv = M[a, :] == ring.unit_index
        left_inv = M[:, a] == ring.unit_index
        element = ring.element(ring.coords(a))
        result.append(RegularElement(element, bool((right_inv & left_inv).any())))
    non_units = [r for r in result if not r.is_unit]
    if non_units:
        logger.warning(f"{ring}: elementos regulares que no son unidades: {non_units}")
    return result


def units(ring: FiniteRing) -> frozenset:
    M = ring.mul_table
    u = ring.unit_index
    return frozenset(
        int(a) for a in range(ring.order) if ((M[a, :] == u) & (M[:, a] == u)).any()
    )


def opposite_ring(ring: FiniteRing) -> FiniteRing:
    """Mismo grupo aditivo con producto a*b = b·a."""
    return FiniteRing(
        ring.moduli,
        np.transpose(ring.structure, (1, 0, 2)).copy(),
        ring.unit,
        name=f"({ring})^op",
    )


def opposite_embedding(emb: RingEmbedding) -> RingEmbedding:
    return RingEmbedding(
        opposite_ring(emb.source), opposite_ring(emb.target), emb.images
    )


def find_isomorphism(source: FiniteRing, target: FiniteRing) -> Optional[RingEmbedding]:
    """
    Busca un isomorfismo de anillos source -> target por retroceso sobre las
    imágenes de la base aditiva. Devuelve None si no existe.
    """
    if source.order != target.order:
        return None
    k = source.rank
    c = source.structure
    T = target
    d = np.array(source.moduli, dtype=np.int64)

    # candidatos para e_i: elementos cuyo orden aditivo divide d_i
    candidates = []
    for i in range(k):
        killed = np.flatnonzero(
            (T.reduce(d[i] * T.elements) == 0).all(axis=1)
        )
        candidates.append(killed)

    images = np.zeros((k, T.rank), dtype=np.int64)

    def consistent(upto: int) -> bool:
        # productos e_i e_j con soporte dentro de los índices ya asignados
        for i in range(upto + 1):
            for j in range(upto + 1):
                support = np.flatnonzero(c[i, j])
                top = max(i, j, int(support.max()) if len(support) else 0)
                if top != upto:
                    continue
                lhs = T.multiply([images[i]], [images[j]])[0]
                rhs = T.reduce(c[i, j][: upto + 1] @ images[: upto + 1])
                if not np.array_equal(lhs, rhs):
                    return False
        return True

    def search(i: int) -> bool:
        if i == k:
            emb = RingEmbedding(source, target, images.copy())
            return emb.is_valid()
        for cand in candidates[i]:
            images[i] = T.elements[cand]
            if consistent(i) and search(i + 1):
                return True
        return False

    if search(0):
        return RingEmbedding(source, target, images.copy())
    return None
