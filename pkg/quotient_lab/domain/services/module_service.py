# quotient_lab/domain/services/module_service.py
"""Motor de módulos: Hom, producto tensorial, planitud, proyectividad y singularidad."""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from quotient_lab.domain.models.abelian import AbelianSubgroup, QuotientGroup
from quotient_lab.domain.models.errors import PresentationMismatch
from quotient_lab.domain.models.integer_matrix import LeftSolver, left_kernel
from quotient_lab.domain.models.module import (
    FiniteModule,
    HomGroup,
    ModuleMap,
    Presentation,
    Submodule,
)
from quotient_lab.domain.models.ring import (
    FiniteRing,
    RingEmbedding,
    RingLike,
    as_finite_ring,
)
from quotient_lab.domain.services.ideal_service import (
    enumerate_right_ideals,
    is_essential,
)
from quotient_lab.domain.services.ring_service import opposite_embedding

logger = logging.getLogger(__name__)


def regular_module(ring: RingLike) -> FiniteModule:
    return FiniteModule.regular(as_finite_ring(ring))


def free_module(ring: FiniteRing, n: int) -> FiniteModule:
    """R^n con la acción por bloques."""
    regular = FiniteModule.regular(ring)
    action = np.stack([np.kron(np.eye(n, dtype=np.int64), A) for A in regular.action])
    return FiniteModule(ring, ring.moduli * n, action, name=f"{ring}^{n}")


def restrict_scalars(module: FiniteModule, emb: RingEmbedding) -> FiniteModule:
    """Un S-módulo visto como R-módulo a través de emb: R -> S."""
    action = np.stack([module.action_matrix(image) for image in emb.images])
    return FiniteModule(
        emb.source, module.moduli, module.reduce(action), name=str(module)
    )


def extension_module(emb: RingEmbedding) -> FiniteModule:
    """S como R-módulo derecho."""
    return restrict_scalars(regular_module(emb.target), emb)


def hom(source: FiniteModule, target: FiniteModule) -> HomGroup:
    """
    Hom_R(source, target) como solución de un sistema lineal entero.

    La incógnita es la matriz F (t_s x t_t) con F[a, b] ∈ Z_{n_b}. Se exige
    m_a F[a, b] ≡ 0 (mod n_b) y A_i F ≡ F B_i (mod n_b, por columnas).
    """
    if source.ring is not target.ring:
        raise ValueError("Hom requiere módulos sobre el mismo anillo")
    ts, tt = source.rank, target.rank
    hom_moduli = tuple(target.moduli[b] for _ in range(ts) for b in range(tt))
    if ts == 0 or tt == 0:
        return HomGroup(source, target, AbelianSubgroup.generated_by([], hom_moduli))

    def unknown(a: int, b: int) -> int:
        return a * tt + b

    columns: List[np.ndarray] = []
    column_moduli: List[int] = []
    for a, m in enumerate(source.moduli):
        for b, n in enumerate(target.moduli):
            column = np.zeros(ts * tt, dtype=np.int64)
            column[unknown(a, b)] = m
            columns.append(column)
            column_moduli.append(n)
    for i in range(source.ring.rank):
        A, B = source.action[i], target.action[i]
        for a in range(ts):
            for b, n in enumerate(target.moduli):
                column = np.zeros(ts * tt, dtype=np.int64)
                for c in range(ts):
                    column[unknown(c, b)] += A[a, c]
                for d in range(tt):
                    column[unknown(a, d)] -= B[d, b]
                columns.append(column)
                column_moduli.append(n)

    C = np.mod(np.stack(columns, axis=1), np.array(column_moduli))
    keep = _distinct_columns(C, column_moduli)
    C = C[:, keep]
    mods = [column_moduli[j] for j in keep]

    stacked = np.vstack([C.astype(object), np.diag(np.array(mods, dtype=object))])
    solutions = left_kernel(stacked)[:, : ts * tt]
    group = AbelianSubgroup.generated_by(solutions, hom_moduli)
    logger.debug(f"|Hom({source}, {target})| = {group.order}")
    return HomGroup(source, target, group)


def _distinct_columns(C: np.ndarray, moduli: List[int]) -> List[int]:
    seen, keep = set(), []
    for j in range(C.shape[1]):
        if not C[:, j].any():
            continue
        key = (moduli[j], C[:, j].tobytes())
        if key not in seen:
            seen.add(key)
            keep.append(j)
    return keep


def presentation(module: FiniteModule) -> Presentation:
    """
    Presentación libre con los generadores aditivos como generadores libres.

    Relaciones: m_a·g_a = 0 y g_a·e_i = Σ_b A_i[a, b] g_b.

    Raises:
        PresentationMismatch: si el conúcleo no reproduce el módulo
    """
    ring, t, k = module.ring, module.rank, module.ring.rank
    unit = np.array(ring.unit, dtype=np.int64)
    rows = []
    for a, m in enumerate(module.moduli):
        row = np.zeros((t, k), dtype=np.int64)
        row[a] = m * unit
        rows.append(row)
    for i in range(k):
        for a in range(t):
            row = np.zeros((t, k), dtype=np.int64)
            row[a, i] += 1
            for b in range(t):
                row[b] -= module.action[i, a, b] * unit
            rows.append(row)
    relations = ring.reduce(np.array(rows, dtype=np.int64).reshape(len(rows), t, k))
    result = Presentation(module, relations, np.eye(t, dtype=np.int64))

    identity = RingEmbedding(ring, ring, np.eye(k, dtype=np.int64))
    check = _tensor_quotient(result, identity)
    natural = check.project_rows(_unit_blocks(ring, t))
    if (
        check.order != module.order
        or AbelianSubgroup.generated_by(natural, check.orders).order != check.order
    ):
        raise PresentationMismatch(
            f"{module}: conúcleo de orden {check.order}, se esperaba {module.order}"
        )
    return result


def _unit_blocks(ring: FiniteRing, t: int) -> np.ndarray:
    """Filas g_a ⊗ 1 en S^t."""
    return np.kron(np.eye(t, dtype=np.int64), np.array(ring.unit, dtype=np.int64))


def _tensor_quotient(pres: Presentation, emb: RingEmbedding) -> QuotientGroup:
    """Conúcleo de S^{n_1} -> S^{n_0} con entradas actuando por la izquierda."""
    S, t = emb.target, pres.free_rank
    lam = S.reduce(np.einsum("rbi,ij->rbj", pres.relations, emb.images))
    # relación ρ por elemento de base s_j de S: bloque b = λ(ρ_b)·s_j
    rows = np.einsum("rbi,ijk->rjbk", lam, S.structure)
    rows = rows.reshape(lam.shape[0] * S.rank, t * S.rank)
    rows = np.mod(rows, np.tile(np.array(S.moduli, dtype=np.int64), t))
    rows = rows[rows.any(axis=1)]
    if len(rows):
        rows = np.unique(rows, axis=0)
    return QuotientGroup.of(rows.astype(object), S.moduli * t)


def _quotient_action(
    quotient: QuotientGroup, actions: Iterable[np.ndarray]
) -> np.ndarray:
    """Acción inducida sobre el cociente por matrices de acción del ambiente."""
    q = len(quotient.orders)
    result = []
    for A in actions:
        images = quotient.lifts @ np.asarray(A, dtype=object)
        result.append(quotient.project_rows(images).reshape(q, q))
    return np.array(result, dtype=np.int64).reshape(len(result), q, q)


@dataclass(frozen=True, eq=False)
class TensorProduct:
    """M ⊗_R S como S-módulo derecho junto con m -> m ⊗ 1."""

    module: FiniteModule
    natural: ModuleMap
    quotient: QuotientGroup

    @property
    def order(self) -> int:
        return self.quotient.order


def tensor_with_extension(module: FiniteModule, emb: RingEmbedding) -> TensorProduct:
    """
    Calcula M ⊗_R S a partir de una presentación de M.

    Args:
        module: R-módulo derecho M
        emb: extensión λ: R -> S

    Returns:
        TensorProduct con el S-módulo T y la aplicación natural M -> T (vista
        como aplicación de R-módulos)
    """
    S, t = emb.target, module.rank
    pres = presentation(module)
    quotient = _tensor_quotient(pres, emb)
    blocks = np.eye(t, dtype=np.int64)
    right_actions = [
        np.kron(blocks, S.right_mult_matrix(S.basis_element(i).coordinates))
        for i in range(S.rank)
    ]
    action = _quotient_action(quotient, right_actions)
    tensor = FiniteModule(S, quotient.orders, action, name=f"{module} ⊗ {S}")
    natural_matrix = quotient.project_rows(_unit_blocks(S, t)).astype(np.int64)
    natural = ModuleMap(module, restrict_scalars(tensor, emb), natural_matrix)
    return TensorProduct(tensor, natural, quotient)


def multiplication_image(emb: RingEmbedding, members: Iterable[int]) -> frozenset:
    """Índices de I·S = subgrupo generado por λ(I)·S dentro de S."""
    S = emb.target
    lam = emb.index_map[np.fromiter(members, dtype=np.int64)]
    products = np.unique(S.mul_table[lam, :])
    return S.span(products)


def ideal_tensor_is_injective(
    emb: RingEmbedding, ideal_module: FiniteModule, members: Iterable[int]
) -> bool:
    """|I ⊗_R S| == |I·S|: la multiplicación I ⊗ S -> S es inyectiva."""
    tensor_order = tensor_with_extension(ideal_module, emb).order
    return tensor_order == len(multiplication_image(emb, members))


def is_flat_left(emb: RingEmbedding, ideals: Optional[Iterable] = None) -> bool:
    """S plano como R-módulo izquierdo: I ⊗_R S -> S inyectiva para todo I."""
    ideals = enumerate_right_ideals(emb.source) if ideals is None else ideals
    for ideal in ideals:
        if not ideal_tensor_is_injective(emb, ideal.as_module(), ideal.members):
            logger.debug(f"{emb.target} no es plano: falla en {ideal}")
            return False
    return True


def is_flat_right(emb: RingEmbedding) -> bool:
    """S plano como R-módulo derecho, vía los anillos opuestos."""
    return is_flat_left(opposite_embedding(emb))


def is_projective(module: FiniteModule) -> bool:
    """
    Decide si la sobreyección canónica R^t -> M se escinde.

    Busca σ = Σ c_h H_h en Hom(M, R^t) con σ·π = id_M resolviendo un
    sistema lineal sobre los generadores H_h.
    """
    t = module.rank
    if t == 0:
        return True
    ring = module.ring
    k = ring.rank
    free = free_module(ring, t)
    # π: generador libre (a, j) = g_a ⊗ e_j -> g_a·e_j
    projection = np.vstack([module.action[j, a] for a in range(t) for j in range(k)])
    generators = hom(module, free).generators()

    entry_moduli = np.array([m for _ in range(t) for m in module.moduli], dtype=object)
    target = np.eye(t, dtype=object).ravel()
    if not generators:
        return bool((np.mod(target, entry_moduli) == 0).all())
    rows = np.array(
        [
            (H.matrix.astype(object) @ projection.astype(object)).ravel()
            for H in generators
        ],
        dtype=object,
    ).reshape(len(generators), t * t)
    stacked = np.vstack([rows, np.diag(entry_moduli)])
    return LeftSolver(stacked).solve(target) is not None


def quotient_module(
    module: FiniteModule, sub: Submodule
) -> Tuple[FiniteModule, ModuleMap]:
    """M/K con su proyección canónica."""
    quotient = QuotientGroup.of(sub.generator_rows.astype(object), module.moduli)
    action = _quotient_action(quotient, module.action)
    result = FiniteModule(module.ring, quotient.orders, action, name=f"{module}/{sub}")
    identity = np.eye(module.rank, dtype=object)
    projection = quotient.project_rows(identity).astype(np.int64)
    return result, ModuleMap(module, result, projection)


def annihilator(module: FiniteModule, index: int) -> frozenset:
    """(0 : m) = {r : m·r = 0} como índices del anillo."""
    return frozenset(int(r) for r in np.flatnonzero(module.action_table[index] == 0))


def colon_in_module(module: FiniteModule, sub: Submodule, index: int) -> frozenset:
    """(N : m) = {r : m·r ∈ N}."""
    row = module.action_table[index]
    members = np.fromiter(sub.members, dtype=np.int64)
    return frozenset(int(r) for r in np.flatnonzero(np.isin(row, members)))


def singular_submodule(module: FiniteModule) -> Submodule:
    """Z(M) = {m : (0 : m) es esencial}."""
    ring = module.ring
    members = frozenset(
        m for m in range(module.order) if is_essential(ring, annihilator(module, m))
    )
    return Submodule(module, members, label=f"Z({module})")


def is_nonsingular(module: FiniteModule) -> bool:
    return singular_submodule(module).is_zero()
