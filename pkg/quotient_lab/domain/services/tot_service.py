# quotient_lab/domain/services/tot_service.py
import logging
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional

from quotient_lab.domain.models.errors import (
    CapExceeded,
    DirectednessViolation,
    FlatnessFailure,
    InternalViolation,
    NotASubring,
    PreconditionFailure,
)
from quotient_lab.domain.models.ideals import GabrielFilter, RightIdeal
from quotient_lab.domain.models.quotients import QMaxRealization, QuotientSubring
from quotient_lab.domain.models.reports import (
    ChainReport,
    ChainStep,
    ClauseResult,
    ConditionReport,
    OracleReport,
)
from quotient_lab.domain.models.ring import RingLike, Subring, as_finite_ring
from quotient_lab.domain.services.ideal_service import (
    enumerate_right_ideals,
    lambek_filter,
    right_ideal_generated,
)
from quotient_lab.domain.services.module_service import (
    is_flat_left,
    is_flat_right,
    is_projective,
)
from quotient_lab.domain.services.quotient_service import (
    filter_of_subring,
    is_perfect_extension,
    is_perfect_filter,
    is_ring_epimorphism,
    membership_subring,
    spans_subring,
)
from quotient_lab.domain.services.ring_service import (
    enumerate_intermediate_subrings,
    subring_generated,
)

METHODS = ("morita", "filter", "shortcut", "oracle")


class TotConstructionService:
    """Construcciones de Q_tot(R) dentro del portador de Q_max(R)"""

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    # ------------------------------------------------------------------
    # Cadena de Morita
    # ------------------------------------------------------------------
    def morita_prime(self, qm: QMaxRealization, current: Subring) -> Subring:
        """
        S' = {s ∈ S : (R : s·λ(r))·S = S para todo r ∈ R}.

        Raises:
            InternalViolation: si S' no es un subanillo que contenga λ(R)
        """
        carrier = qm.carrier
        lam = qm.embedding.index_map
        spans: Dict[FrozenSet[int], bool] = {}

        def spans_current(colon: FrozenSet[int]) -> bool:
            if colon not in spans:
                spans[colon] = spans_subring(qm, colon, current)
            return spans[colon]

        members = [
            s
            for s in current.sorted_members
            if all(spans_current(qm.colon(carrier.mul_table[s, r])) for r in lam)
        ]
        try:
            return membership_subring(qm, members, label=f"{current}'")
        except NotASubring as e:
            raise InternalViolation(f"S' no es subanillo: {e}") from e

    def morita_chain(self, qm: QMaxRealization, with_flags: bool = True) -> ChainReport:
        """Itera S -> S' desde Q_max hasta el punto fijo."""
        steps = [qm.full]
        while True:
            following = self.morita_prime(qm, steps[-1])
            if following == steps[-1]:
                break
            steps.append(following)
        report = ChainReport(
            str(qm.base), "morita", [ChainStep(i, s) for i, s in enumerate(steps)]
        )
        if with_flags:
            self._flag_steps(qm, report)
        self.logger.info(f"{qm.base}: cadena de Morita con γ = {report.gamma}")
        return report

    # ------------------------------------------------------------------
    # Cadena simplificada por filtros
    # ------------------------------------------------------------------
    def filter_step(self, qm: QMaxRealization, current: Subring) -> Subring:
        """Q_{α+1} = {q ∈ Q_max : (R : q)·Q_α = Q_α}, sobre todo el portador."""
        members = [
            q
            for q in range(qm.carrier.order)
            if spans_subring(qm, qm.colon(q), current)
        ]
        try:
            return membership_subring(qm, members, label=f"Q({current})")
        except NotASubring as e:
            raise InternalViolation(f"paso de filtro no es subanillo: {e}") from e

    def simplified_chain(
        self, qm: QMaxRealization, with_flags: bool = True
    ) -> ChainReport:
        """
        Q_0 = Q_max, F_0 = Lambek; F_{α+1} = {I : I·Q_α = Q_α} y
        Q_{α+1} = {q : (R : q) ∈ F_{α+1}}.

        Raises:
            FlatnessFailure: si algún Q_α intermedio no es plano a izquierda
            InternalViolation: si el punto fijo no es epimorfismo de anillos
        """
        steps = [qm.full]
        filters = [lambek_filter(qm.base)]
        while True:
            current = steps[-1]
            if not is_flat_left(qm.extension(current)):
                raise FlatnessFailure(
                    len(steps) - 1, f"{current} no es plano sobre {qm.base}"
                )
            filters.append(filter_of_subring(qm, current, name=f"F_{len(steps)}"))
            following = self.filter_step(qm, current)
            if following == current:
                break
            if not following <= current:
                extra = min(following.members - current.members)
                raise InternalViolation(
                    f"Q_{len(steps)} ⊄ Q_{len(steps) - 1}: "
                    f"{qm.carrier.coords(extra)} sobra"
                )
            steps.append(following)

        fixpoint = steps[-1]
        if not is_ring_epimorphism(qm.extension(fixpoint)):
            raise InternalViolation(f"{fixpoint}: Q_γ ⊗ Q_γ ≇ Q_γ")

        report = ChainReport(
            str(qm.base), "filter", [ChainStep(i, s) for i, s in enumerate(steps)]
        )
        for step, F in zip(report.steps, filters[1:]):
            step.filter_size = len(F)
            step.basis_witness = self.filter_basis_witness(qm, step.subring, F)
        if with_flags:
            self._flag_steps(qm, report, filters)
        self.logger.info(f"{qm.base}: cadena de filtros con γ = {report.gamma}")
        return report

    def chain_filters(
        self, qm: QMaxRealization, report: ChainReport
    ) -> List[GabrielFilter]:
        """F_0, F_1, ..., F_{γ+1} asociados a los pasos de una cadena."""
        filters = [lambek_filter(qm.base)]
        for step in report.steps:
            name = f"F_{step.index + 1}"
            filters.append(filter_of_subring(qm, step.subring, name=name))
        return filters

    def _flag_steps(
        self,
        qm: QMaxRealization,
        report: ChainReport,
        filters: Optional[List[GabrielFilter]] = None,
    ) -> None:
        filters = filters or self.chain_filters(qm, report)
        for step in report.steps:
            emb = qm.extension(step.subring)
            step.flat_left = is_flat_left(emb)
            step.epimorphism = is_ring_epimorphism(emb)
            step.perfect_extension = step.flat_left and step.epimorphism
            step.filter_perfect = bool(is_perfect_filter(qm, filters[step.index]))
            if step.filter_size is None:
                step.filter_size = len(filters[step.index + 1])

    def filter_basis_witness(
        self, qm: QMaxRealization, current: Subring, F: GabrielFilter
    ) -> List[List[int]]:
        """
        Para cada I de la base de F, generadores x_1..x_n ∈ I con
        (x_1 R + ... + x_n R)·Q_α = Q_α, elegidos vorazmente.
        """
        R = qm.base
        witness = []
        for ideal in F.basis:
            chosen: List[int] = []
            generated = RightIdeal(R, frozenset({R.zero_index}))
            for x in ideal.sorted_members:
                if x in generated:
                    continue
                chosen.append(x)
                generated = right_ideal_generated(R, chosen)
                if spans_subring(qm, generated.members, current):
                    break
            if not spans_subring(qm, generated.members, current):
                raise InternalViolation(f"{ideal} ∈ {F} pero I·{current} != {current}")
            witness.append(chosen)
        return witness

    # ------------------------------------------------------------------
    # Condiciones (C) y (C′)
    # ------------------------------------------------------------------
    def condition_report(
        self, qm: QMaxRealization, side: str = "C", cap: Optional[int] = None
    ) -> ConditionReport:
        """
        (C): todo λ(R) ⊆ T ⊆ Q_max es plano a izquierda sobre R.
        (C′): lo mismo a derecha.
        """
        if side not in ("C", "C'"):
            raise ValueError(f"lado desconocido: {side}")
        check = is_flat_left if side == "C" else is_flat_right
        name = str(qm.base)
        try:
            intermediate = enumerate_intermediate_subrings(qm.embedding, cap)
        except CapExceeded as e:
            self.logger.warning(f"{name}: condición ({side}) sin decidir: {e}")
            return ConditionReport(name, side, None, 0, cap_exceeded=True)

        ordered = sorted(intermediate, key=lambda s: (s.order, s.sorted_members))
        for examined, subring in enumerate(ordered, start=1):
            if not check(qm.extension(subring)):
                self.logger.info(f"{name}: ({side}) falla en {subring}")
                return ConditionReport(name, side, False, examined, witness=subring)
        return ConditionReport(name, side, True, len(ordered))

    # ------------------------------------------------------------------
    # Atajo semihereditario y oráculo
    # ------------------------------------------------------------------
    def is_right_semihereditary(self, ring: RingLike) -> bool:
        """Todo ideal derecho (finitamente generado) es proyectivo."""
        R = as_finite_ring(ring)
        return all(is_projective(I.as_module()) for I in enumerate_right_ideals(R))

    def qtot_shortcut(self, qm: QMaxRealization) -> QuotientSubring:
        """
        Q_tot = {q : (R : q)·Q_max = Q_max} para R semihereditario a derecha.

        Raises:
            PreconditionFailure: si R no es semihereditario a derecha
        """
        if not self.is_right_semihereditary(qm.base):
            raise PreconditionFailure(f"{qm.base} no es semihereditario a derecha")
        subring = self.filter_step(qm, qm.full)
        F = filter_of_subring(qm, qm.full, name=f"τ_{qm.carrier}")
        return QuotientSubring(Subring(qm.carrier, subring.members, "Q_tot"), F)

    def shortcut_chain(
        self, qm: QMaxRealization, with_flags: bool = True
    ) -> ChainReport:
        """
        El atajo como cadena de a lo sumo un paso: Q_max y, si difiere, Q_tot.

        Raises:
            PreconditionFailure: si R no es semihereditario a derecha
        """
        result = self.qtot_shortcut(qm)
        steps = [qm.full]
        if result.subring.members != qm.full.members:
            steps.append(result.subring)
        report = ChainReport(
            str(qm.base),
            "shortcut",
            [ChainStep(i, s) for i, s in enumerate(steps)],
            notes=["un solo paso de filtro desde Q_max"],
        )
        first = report.steps[0]
        first.filter_size = len(result.filter)
        first.basis_witness = self.filter_basis_witness(
            qm, qm.full, result.filter
        )
        if with_flags:
            self._flag_steps(qm, report)
        return report

    def oracle_report(
        self, qm: QMaxRealization, cap: Optional[int] = None
    ) -> OracleReport:
        """
        Subanillos intermedios perfectos, de menor a mayor, comprobando que
        forman un conjunto dirigido.

        Raises:
            CapExceeded: si hay demasiados subanillos intermedios
            DirectednessViolation: si los perfectos no forman un conjunto dirigido
        """
        intermediate = enumerate_intermediate_subrings(qm.embedding, cap)
        perfect = sorted(
            (T for T in intermediate if is_perfect_extension(qm.extension(T))),
            key=lambda s: (s.order, s.sorted_members),
        )
        if not perfect:
            raise InternalViolation(f"{qm.base}: ni λ(R) es extensión perfecta")
        found = set(perfect)
        for first, second in combinations(perfect, 2):
            join = subring_generated(qm.carrier, first.members | second.members)
            if join not in found:
                raise DirectednessViolation((first, second))
        top = perfect[-1]
        if not all(T <= top for T in perfect):
            raise DirectednessViolation((top,))
        self.logger.debug(f"{qm.base}: {len(perfect)} extensiones perfectas intermedias")
        steps = [
            ChainStep(i, T, flat_left=True, epimorphism=True, perfect_extension=True)
            for i, T in enumerate(perfect)
        ]
        return OracleReport(str(qm.base), len(intermediate), steps)

    def brute_force_qtot(
        self, qm: QMaxRealization, cap: Optional[int] = None
    ) -> QuotientSubring:
        """
        Máximo de los subanillos intermedios perfectos.

        Raises:
            CapExceeded: si hay demasiados subanillos intermedios
            DirectednessViolation: si los perfectos no forman un conjunto dirigido
        """
        top = self.oracle_report(qm, cap).fixpoint
        return QuotientSubring(Subring(qm.carrier, top.members, "Q_tot"))

    def qtot_membership_check(self, qm: QMaxRealization, qtot: Subring) -> ClauseResult:
        """Para todo q ∈ Q_tot: (R : q)·Q_tot = Q_tot."""
        name = "(R : q)·Q_tot = Q_tot"
        for q in qtot.sorted_members:
            if not spans_subring(qm, qm.colon(q), qtot):
                return ClauseResult(name, False, f"q = {qm.carrier.coords(q)}")
        return ClauseResult(name, True)

    def qtot(
        self, qm: QMaxRealization, method: str = "filter", cap: Optional[int] = None
    ) -> Subring:
        """Q_tot por el método indicado."""
        if method == "morita":
            return self.morita_chain(qm, with_flags=False).fixpoint
        if method == "filter":
            return self.simplified_chain(qm, with_flags=False).fixpoint
        if method == "shortcut":
            return self.qtot_shortcut(qm).subring
        if method == "oracle":
            return self.brute_force_qtot(qm, cap).subring
        raise ValueError(f"método desconocido: {method} (esperado uno de {METHODS})")
