# quotient_lab/domain/services/quotient_service.py
import logging
from typing import FrozenSet, Iterable, List, Optional

import numpy as np

from quotient_lab.domain.models.abelian import AbelianSubgroup
from quotient_lab.domain.models.errors import (
    InternalViolation,
    NotASubring,
    PreconditionFailure,
    RealizationViolation,
    RingValidationError,
)
from quotient_lab.domain.models.ideals import GabrielFilter, RightIdeal
from quotient_lab.domain.models.module import FiniteModule, Submodule
from quotient_lab.domain.models.quotients import (
    QMaxRealization,
    QuotientSubring,
    TorsionTheory,
)
from quotient_lab.domain.models.reports import ClauseResult, PerfectFilterEvidence
from quotient_lab.domain.models.ring import (
    FiniteRing,
    RingEmbedding,
    RingLike,
    Subring,
    as_finite_ring,
)
from quotient_lab.domain.services.ideal_service import (
    classical_filter,
    enumerate_right_ideals,
    filter_of_extension,
    goldie_filter,
    lambek_filter,
    minimal_dense_ideal,
)
from quotient_lab.domain.services.module_service import (
    annihilator,
    extension_module,
    hom,
    is_flat_left,
    quotient_module,
    regular_module,
    tensor_with_extension,
)
from quotient_lab.domain.services.ring_service import check_ring_axioms

logger = logging.getLogger(__name__)


def build_qmax(ring: RingLike) -> QMaxRealization:
    """
    Construye Q_max(R) como End_R(D), con D el ideal derecho denso mínimo.

    Raises:
        RealizationViolation: si algún f: D -> R tiene imagen fuera de D o
            si λ no es una inmersión de anillos
    """
    R = as_finite_ring(ring)
    D = minimal_dense_ideal(R)
    D_module = D.as_module()
    D_basis = D.submodule.additive_basis
    t = D_module.rank

    # Todo f: D -> R cae dentro de D; basta comprobarlo en los generadores
    for f in hom(D_module, regular_module(R)).generators():
        images = R.indices_of(f.matrix)
        outside = [int(i) for i in images if int(i) not in D.members]
        if outside:
            raise RealizationViolation(
                f"{R}: un homomorfismo D -> R alcanza {R.coords(outside[0])} ∉ D"
            )

    endomorphisms = hom(D_module, D_module)
    group = endomorphisms.group

    def carrier_coords(matrix: np.ndarray) -> tuple:
        coords = group.coordinates(D_module.reduce(matrix).ravel())
        if coords is None:
            raise RealizationViolation(f"{R}: composición fuera de End(D)")
        return coords

    F = [np.asarray(row, dtype=np.int64).reshape(t, t) for row in group.basis]
    n = group.rank
    structure = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            structure[i, j] = carrier_coords(F[j] @ F[i])
    unit = carrier_coords(np.eye(t, dtype=np.int64))
    carrier = FiniteRing(tuple(group.orders), structure, tuple(unit), name=f"Q_max({R})")
    try:
        check_ring_axioms(carrier)
    except RingValidationError as e:
        raise RealizationViolation(f"{R}: End(D) no es un anillo válido: {e}") from e

    generators = np.asarray(D_basis.basis, dtype=np.int64).reshape(t, R.rank)
    images = []
    for i in range(R.rank):
        left = np.tile(R.basis_element(i).coordinates, (t, 1))
        products = R.multiply(left, generators)
        rows = []
        for product in products:
            coords = D_basis.coordinates(product)
            if coords is None:
                raise RealizationViolation(f"{R}: D no es ideal izquierdo-estable")
            rows.append(coords)
        images.append(carrier_coords(np.array(rows, dtype=np.int64).reshape(t, t)))
    embedding = RingEmbedding(R, carrier, np.array(images, dtype=np.int64))
    problems = embedding.problems()
    if problems:
        raise RealizationViolation(f"{R}: λ no es inmersión: {problems[0]}")

    qm = QMaxRealization(R, D, D_module, carrier, embedding, endomorphisms)
    logger.info(f"{R}: |D| = {D.order}, |Q_max| = {carrier.order}")
    return qm


def _require_subring(ring: FiniteRing, members: FrozenSet[int], operation_label: str):
    sub = np.array(sorted(members), dtype=np.int64)
    for table, operation in ((ring.add_table, "suma"), (ring.mul_table, "producto")):
        outside = ~np.isin(table[np.ix_(sub, sub)], sub)
        if outside.any():
            a, b = np.argwhere(outside)[0]
            witness = (ring.coords(sub[a]), ring.coords(sub[b]))
            raise NotASubring(witness, f"{operation} en {operation_label}")


def membership_subring(
    qm: QMaxRealization, members: Iterable[int], label: str = ""
) -> Subring:
    """Valida que un conjunto de pertenencia sea subanillo con λ(R) dentro."""
    members = frozenset(int(q) for q in members)
    if not qm.lambda_image.members <= members:
        missing = min(qm.lambda_image.members - members)
        raise NotASubring((qm.carrier.coords(missing),), f"λ(R) ⊄ {label}")
    _require_subring(qm.carrier, members, label)
    return Subring(qm.carrier, members, label=label)


def spans_subring(qm: QMaxRealization, ideal: Iterable[int], target: Subring) -> bool:
    """Decide I·T = T, es decir 1 ∈ subgrupo generado por λ(I)·T."""
    lam = qm.embedding.index_map[np.fromiter(ideal, dtype=np.int64)]
    return qm.carrier.ideal_product_contains_unit(lam, target.member_array)


def filter_of_subring(
    qm: QMaxRealization, target: Subring, name: str = ""
) -> GabrielFilter:
    """{I : I·T = T} para λ(R) ⊆ T ⊆ Q_max, calculado dentro del portador."""
    R = qm.base
    members = [
        I for I in enumerate_right_ideals(R) if spans_subring(qm, I.members, target)
    ]
    return GabrielFilter.of(R, members, name=name or f"τ_{target}")


def torsion_indices(module: FiniteModule, F: GabrielFilter) -> FrozenSet[int]:
    """{m : (0 : m) ∈ F}."""
    return frozenset(m for m in range(module.order) if annihilator(module, m) in F)


def torsion_submodule(module: FiniteModule, theory: TorsionTheory) -> Submodule:
    """
    Submódulo de torsión tM = {m : (0 : m) ∈ F}.

    Si la teoría viene de una extensión plana también se calcula como
    núcleo de M -> M ⊗_R S y se exige que ambos coincidan.
    """
    members = torsion_indices(module, theory.filter)
    if theory.extension is not None:
        kernel = tensor_with_extension(module, theory.extension).natural.kernel()
        if kernel.members != members:
            raise InternalViolation(
                f"{module}: torsión por filtro ({len(members)}) != "
                f"núcleo de M -> M ⊗ S ({kernel.order}) para {theory}"
            )
    return Submodule(module, members, label=f"t({module})")


def closure(module: FiniteModule, sub: Submodule, theory: TorsionTheory) -> Submodule:
    """cl(K) = preimagen de t(M/K)."""
    quotient, projection = quotient_module(module, sub)
    torsion = np.fromiter(torsion_indices(quotient, theory.filter), dtype=np.int64)
    images = quotient.indices_of(projection.apply(module.elements))
    members = frozenset(int(m) for m in np.flatnonzero(np.isin(images, torsion)))
    return Submodule(module, members, label=f"cl({sub})")


def is_faithful(F: GabrielFilter) -> bool:
    """R libre de torsión: (0 : r) ∉ F para todo r != 0."""
    return torsion_indices(regular_module(F.ring), F) == frozenset({0})


def lambek_theory(ring: RingLike) -> TorsionTheory:
    R = as_finite_ring(ring)
    return TorsionTheory(R, lambek_filter(R), name="lambek")


def goldie_theory(ring: RingLike) -> TorsionTheory:
    R = as_finite_ring(ring)
    return TorsionTheory(R, goldie_filter(R), name="goldie")


def classical_theory(ring: RingLike) -> TorsionTheory:
    R = as_finite_ring(ring)
    return TorsionTheory(R, classical_filter(R), name="classical")


def filter_theory(F: GabrielFilter, name: str = "") -> TorsionTheory:
    return TorsionTheory(F.ring, F, name=name or str(F))


def extension_theory(emb: RingEmbedding) -> TorsionTheory:
    """
    τ_S para una extensión plana R ⊆ S.

    Raises:
        PreconditionFailure: si S no es plano como R-módulo izquierdo
    """
    if not is_flat_left(emb):
        raise PreconditionFailure(f"{emb.target} no es plano sobre {emb.source}")
    F = filter_of_extension(emb)
    return TorsionTheory(emb.source, F, extension=emb, name=f"extension({emb.target})")


def theory_by_name(name: str, ring: FiniteRing) -> TorsionTheory:
    builders = {
        "lambek": lambek_theory,
        "goldie": goldie_theory,
        "classical": classical_theory,
    }
    if name not in builders:
        raise ValueError(f"teoría de torsión desconocida: {name}")
    return builders[name](ring)


def require_faithful(qm: QMaxRealization, F: GabrielFilter) -> None:
    """
    R_F sólo se define dentro de Q_max para filtros fieles contenidos en el
    de Lambek.

    Raises:
        PreconditionFailure: si F no es fiel o no está contenido en el filtro de Lambek
    """
    if not is_faithful(F):
        raise PreconditionFailure(f"{F} no es fiel: R tiene F-torsión")
    if not F <= lambek_filter(qm.base):
        raise PreconditionFailure(f"{F} no está contenido en el filtro de Lambek")


def ring_of_quotients(qm: QMaxRealization, F: GabrielFilter) -> QuotientSubring:
    """
    R_F = {q ∈ Q_max : (R : q) ∈ F}.

    Raises:
        PreconditionFailure: si F no es fiel o no está contenido en el de Lambek
        NotASubring: si el conjunto de pertenencia no es cerrado (se informa
            aguas arriba como fallo de la condición (C))
    """
    require_faithful(qm, F)
    members = [q for q in range(qm.carrier.order) if qm.colon(q) in F]
    label = f"R_{{{F}}}"
    try:
        subring = membership_subring(qm, members, label)
    except NotASubring as e:
        logger.warning(f"{qm.base}: {e}")
        raise
    return QuotientSubring(subring, F)


def _multiplication_is_bijective(
    left: RingEmbedding, right: RingEmbedding, inclusion: np.ndarray
) -> bool:
    """
    A ⊗_R B -> B, a ⊗ b -> a·b, biyectiva.

    `inclusion[a]` son las coordenadas en B del generador aditivo a de A.
    """
    B = right.target
    tensor = tensor_with_extension(extension_module(left), right)
    if tensor.order != B.order:
        return False
    lifts = np.asarray(tensor.quotient.lifts, dtype=np.int64)
    blocks = lifts.reshape(lifts.shape[0], left.target.rank, B.rank)
    images = B.reduce(np.einsum("qak,ai,ikm->qm", blocks, inclusion, B.structure))
    return AbelianSubgroup.generated_by(images, B.moduli).order == B.order


def is_ring_epimorphism(emb: RingEmbedding) -> bool:
    """S ⊗_R S -> S biyectiva."""
    identity = np.eye(emb.target.rank, dtype=np.int64)
    return _multiplication_is_bijective(emb, emb, identity)


def tensor_collapses(qm: QMaxRealization, smaller: Subring, larger: Subring) -> bool:
    """Q_a ⊗_R Q_b ≅ Q_b por la multiplicación, para Q_a ⊆ Q_b."""
    left, right = qm.extension(smaller), qm.extension(larger)
    small, large = smaller.realization, larger.realization
    inclusion = np.array(
        [
            large.ring.coords(
                large.index_in_ring(small.to_ambient[small.ring.index_of(row)])
            )
            for row in np.eye(small.ring.rank, dtype=np.int64)
        ],
        dtype=np.int64,
    ).reshape(small.ring.rank, large.ring.rank)
    return _multiplication_is_bijective(left, right, inclusion)


def is_perfect_extension(emb: RingEmbedding) -> bool:
    """Extensión epimórfica y plana como R-módulo izquierdo."""
    return is_ring_epimorphism(emb) and is_flat_left(emb)


def cyclic_modules(ring: FiniteRing) -> List[FiniteModule]:
    """R/I para cada ideal derecho I."""
    modules = []
    for ideal in enumerate_right_ideals(ring):
        module, _ = quotient_module(ideal.submodule.module, ideal.submodule)
        modules.append(module)
    return modules


def is_perfect_filter(
    qm: QMaxRealization,
    F: GabrielFilter,
    sample: Optional[List[FiniteModule]] = None,
) -> PerfectFilterEvidence:
    """
    F es perfecto si R_F es extensión perfecta y F = {I : I·R_F = R_F}.

    Como evidencia adicional comprueba, sobre los módulos cíclicos R/I, que
    el núcleo de M -> M ⊗_R R_F es de F-torsión.

    Raises:
        PreconditionFailure: si F no es fiel o no está contenido en el de Lambek
    """
    name = str(F)
    try:
        quotient = ring_of_quotients(qm, F)
    except NotASubring:
        return PerfectFilterEvidence(name, False, False, False, None)

    emb = qm.extension(quotient.subring)
    extension_perfect = is_perfect_extension(emb)
    recovered = filter_of_subring(qm, quotient.subring) == F

    modules = cyclic_modules(qm.base) if sample is None else sample
    sampling = []
    for module in modules:
        kernel = tensor_with_extension(module, emb).natural.kernel()
        torsion = torsion_indices(module, F)
        sampling.append(
            ClauseResult(
                f"ker({module} -> {module} ⊗ R_F) ⊆ t({module})",
                kernel.members <= torsion,
            )
        )
    return PerfectFilterEvidence(
        name,
        extension_perfect and recovered,
        extension_perfect,
        recovered,
        quotient.order,
        sampling,
    )


def is_kasch(qm: QMaxRealization) -> bool:
    """Q_max sin ideales derechos densos propios."""
    return len(lambek_filter(qm.carrier)) == 1


def colon_in_carrier(
    qm: QMaxRealization, q: int, target: Optional[Subring] = None
) -> RightIdeal:
    """(T : q) como ideal derecho de R (T = λ(R) por defecto)."""
    return RightIdeal(qm.base, qm.colon_set(q, target))
