# quotient_lab/domain/services/verification_service.py
import logging
from typing import List, Optional

from quotient_lab.domain.models.errors import (
    CapExceeded,
    DirectednessViolation,
    FlatnessFailure,
    QuotientLabError,
)
from quotient_lab.domain.models.ideals import GabrielFilter
from quotient_lab.domain.models.quotients import QMaxRealization
from quotient_lab.domain.models.reports import ChainReport, VerificationReport
from quotient_lab.domain.models.ring import Subring
from quotient_lab.domain.services.ideal_service import (
    check_gabriel_axioms,
    classical_filter,
    classify_right_ideal,
    enumerate_right_ideals,
    filter_of_extension,
    goldie_filter,
    lambek_filter,
    left_annihilator,
    morita_filter,
)
from quotient_lab.domain.services.module_service import (
    is_flat_left,
    is_nonsingular,
    regular_module,
    tensor_with_extension,
)
from quotient_lab.domain.services.quotient_service import (
    build_qmax,
    cyclic_modules,
    filter_of_subring,
    is_faithful,
    is_kasch,
    is_perfect_extension,
    is_perfect_filter,
    is_ring_epimorphism,
    ring_of_quotients,
    tensor_collapses,
    torsion_indices,
)
from quotient_lab.domain.services.ring_service import (
    enumerate_intermediate_subrings,
    is_von_neumann_regular,
    regular_elements,
    units,
)
from quotient_lab.domain.services.tot_service import TotConstructionService


class VerificationService:
    """Comprueba exhaustivamente los enunciados de la teoría sobre un anillo concreto"""

    def __init__(
        self,
        tot_service: Optional[TotConstructionService] = None,
        logger: Optional[logging.Logger] = None,
    ):
        self.logger = logger or logging.getLogger(__name__)
        self.tot = tot_service or TotConstructionService(logger=self.logger)

    def verify_suite(
        self, qm: QMaxRealization, cap: Optional[int] = None
    ) -> VerificationReport:
        """
        Ejecuta todas las cláusulas aplicables y devuelve el informe.

        Las cláusulas que dependen de (C) o del oráculo se omiten (con una
        cláusula informativa) cuando no aplican.
        """
        R = qm.base
        report = VerificationReport(str(R))
        self._realization(qm, report)
        self._filters(qm, report)

        morita = self.tot.morita_chain(qm, with_flags=False)
        oracle = self._oracle(qm, cap, report)
        if oracle is not None:
            report.add("Q_tot(Morita) = oráculo", morita.fixpoint == oracle)
            report.extend([self.tot.qtot_membership_check(qm, oracle)])
        qtot = oracle if oracle is not None else morita.fixpoint

        condition = self.tot.condition_report(qm, "C", cap)
        if condition.verdict:
            self._filter_chain(qm, morita, qtot, report)
        elif condition.verdict is None:
            report.add(
                "cadena de filtros", True, "omitida: enumeración de (C) sin decidir"
            )
        else:
            skipped = f"omitida: (C) falla en {condition.witness}"
            report.add("cadena de filtros", True, skipped)

        if self._is_commutative(qm):
            right = self.tot.condition_report(qm, "C'", cap)
            report.add("conmutativo: (C) ⇔ (C′)", condition.verdict == right.verdict)

        if self.tot.is_right_semihereditary(R):
            shortcut = self.tot.qtot_shortcut(qm).subring
            report.add("atajo semihereditario = Q_tot", shortcut == qtot)
            report.add(
                "semihereditario: γ ≤ 1", morita.gamma <= 1, f"γ = {morita.gamma}"
            )

        if is_von_neumann_regular(R):
            report.add(
                "regular de von Neumann: Q_tot = λ(R)",
                qtot == qm.lambda_image,
                f"|Q_tot| = {qtot.order}",
            )

        self._intermediate_extensions(qm, qtot, cap, report)
        report.add(
            "Kasch(Q_max) ⇔ Lambek perfecto",
            is_kasch(qm) == bool(is_perfect_filter(qm, lambek_filter(R))),
        )
        self.logger.info(
            f"{R}: {len(report.clauses)} cláusulas, {len(report.failures)} fallos"
        )
        return report

    def verify_ring(self, ring, cap: Optional[int] = None) -> VerificationReport:
        try:
            qm = build_qmax(ring)
        except QuotientLabError as e:
            report = VerificationReport(str(ring))
            report.add("realización de Q_max", False, str(e))
            return report
        return self.verify_suite(qm, cap)

    # ------------------------------------------------------------------
    def _is_commutative(self, qm: QMaxRealization) -> bool:
        table = qm.base.mul_table
        return bool((table == table.T).all())

    def _realization(self, qm: QMaxRealization, report: VerificationReport) -> None:
        R, carrier = qm.base, qm.carrier
        report.add("λ es inmersión de anillos", qm.embedding.is_valid())
        report.add("|Q_max| ≥ |R|", carrier.order >= R.order)
        D = qm.dense_ideal
        report.add(
            "D con anulador izquierdo nulo",
            left_annihilator(R, D.members) == frozenset({R.zero_index}),
        )
        dense = lambek_filter(R)
        bad = [q for q in range(carrier.order) if qm.colon(q) not in dense]
        report.add(
            "(R : q) denso para todo q",
            not bad,
            f"q = {carrier.coords(bad[0])}" if bad else "",
        )

    def _filters(self, qm: QMaxRealization, report: VerificationReport) -> None:
        R = qm.base
        lambek = lambek_filter(R)
        goldie = goldie_filter(R)
        classical = classical_filter(R)
        for F in (lambek, goldie, classical):
            report.extend([check_gabriel_axioms(F)])
        report.add("Lambek fiel", is_faithful(lambek))
        report.add("Lambek ⊆ Goldie", lambek <= goldie)
        report.add("clásico ⊆ Lambek", classical <= lambek)

        ideals = enumerate_right_ideals(R)
        report.add(
            "denso ⇒ esencial",
            all(classify_right_ideal(I).essential for I in ideals if I in lambek),
        )
        if is_nonsingular(regular_module(R)):
            report.add(
                "no singular: denso ⇔ esencial",
                all(classify_right_ideal(I).dense == classify_right_ideal(I).essential
                    for I in ideals),
            )
            report.add("no singular: Goldie = Lambek", goldie == lambek)

        regular = {e.element.index for e in regular_elements(R)}
        report.add("Q_cl(R) = R: todo regular es unidad", regular <= units(R))

    def _oracle(
        self, qm: QMaxRealization, cap: Optional[int], report: VerificationReport
    ) -> Optional[Subring]:
        try:
            return self.tot.brute_force_qtot(qm, cap).subring
        except CapExceeded as e:
            report.add("oráculo de Q_tot", True, f"omitido: {e}")
        except DirectednessViolation as e:
            report.add("extensiones perfectas dirigidas", False, str(e))
        return None

    def _filter_chain(
        self,
        qm: QMaxRealization,
        morita: ChainReport,
        qtot: Subring,
        report: VerificationReport,
    ) -> None:
        try:
            chain = self.tot.simplified_chain(qm, with_flags=False)
        except FlatnessFailure as e:
            report.add("cadena de filtros bajo (C)", False, str(e))
            return

        report.add("γ(filtros) = γ(Morita)", chain.gamma == morita.gamma)
        stepwise = all(
            chain.subring_at(a) == morita.subring_at(a)
            for a in range(max(chain.gamma, morita.gamma) + 1)
        )
        report.add("Q_α = S^(α) paso a paso", stepwise)

        filters = self.tot.chain_filters(qm, chain)
        subrings = [step.subring for step in chain.steps] + [chain.fixpoint]
        for a, Q in enumerate(subrings[:-1]):
            emb = qm.extension(Q)
            report.add(
                f"Morita(R ⊆ Q_{a}) = τ_{{Q_{a}}}",
                morita_filter(emb) == filter_of_extension(emb),
            )
        self._induction(qm, subrings, filters, qtot, report)

    def _induction(
        self,
        qm: QMaxRealization,
        subrings: List[Subring],
        filters: List[GabrielFilter],
        qtot: Subring,
        report: VerificationReport,
    ) -> None:
        """Cláusulas de la inducción sobre la cadena (β < α ≤ γ + 1)."""
        carrier = qm.carrier
        steps = len(subrings)
        perfect = [is_perfect_extension(qm.extension(Q)) for Q in subrings]
        filter_perfect = [bool(is_perfect_filter(qm, F)) for F in filters]

        for alpha in range(steps):
            Qa, Fa = subrings[alpha], filters[alpha]
            for beta in range(alpha):
                Qb, Fb = subrings[beta], filters[beta]
                nested = Qa <= Qb and Fa <= Fb
                report.add(f"Q_{alpha} ⊆ Q_{beta}, F_{alpha} ⊆ F_{beta}", nested)
                torsion = all(
                    qm.colon_set(m, Qa) in Fb for m in Qb.sorted_members
                )
                torsion_free = all(
                    qm.colon_set(m, Qa) not in Fa
                    for m in Qb.sorted_members
                    if m not in Qa
                )
                report.add(
                    f"Q_{beta}/Q_{alpha} de τ_{beta}-torsión y τ_{alpha}-libre",
                    torsion and torsion_free,
                )
                report.add(
                    f"Q_{alpha} ⊗_R Q_{beta} ≅ Q_{beta}",
                    tensor_collapses(qm, Qa, Qb),
                )
            report.add(f"Q_tot ⊆ Q_{alpha}", qtot <= Qa)
            report.add(
                f"Q_{alpha} perfecto ⇔ Q_{alpha} = Q_tot",
                perfect[alpha] == (Qa == qtot),
            )
            if filter_perfect[alpha]:
                report.add(f"F_{alpha} perfecto ⇒ Q_{alpha} perfecto", perfect[alpha])
            if perfect[alpha] and alpha + 1 < len(filters):
                report.add(
                    f"Q_{alpha} perfecto ⇒ F_{alpha + 1} perfecto",
                    filter_perfect[alpha + 1],
                )
            if alpha + 1 < len(filters):
                report.add(
                    f"F_{alpha} = F_{alpha + 1} ⇔ F_{alpha} perfecto",
                    (filters[alpha] == filters[alpha + 1]) == filter_perfect[alpha],
                )
            coker = all(qm.colon(q) in Fa for q in Qa.sorted_members)
            report.add(f"Q_{alpha}/λ(R) es de F_{alpha}-torsión", coker)
        fixpoint = subrings[-1]
        collapses = tensor_collapses(qm, fixpoint, fixpoint)
        report.add(f"{carrier}: Q_γ ⊗ Q_γ ≅ Q_γ", collapses)

    def _intermediate_extensions(
        self,
        qm: QMaxRealization,
        qtot: Subring,
        cap: Optional[int],
        report: VerificationReport,
    ) -> None:
        """
        Recorre λ(R) ⊆ T ⊆ Q_max: si T es plano, ker(M -> M ⊗ T) = t(M) en
        los cíclicos; si además es perfecto, ida y vuelta con su filtro.
        """
        report.add("Q_tot perfecto", is_perfect_extension(qm.extension(qtot)))
        try:
            intermediate = enumerate_intermediate_subrings(qm.embedding, cap)
        except CapExceeded as e:
            report.add("extensiones intermedias", True, f"omitidas salvo Q_tot: {e}")
            intermediate = {qtot}

        modules = cyclic_modules(qm.base)
        ordered = sorted(intermediate, key=lambda s: (s.order, s.sorted_members))
        for i, T in enumerate(ordered):
            name = "Q_tot" if T == qtot else f"T_{i} (|T| = {T.order})"
            emb = qm.extension(T)
            if not is_flat_left(emb):
                continue
            F = filter_of_extension(emb)
            mismatched = [
                str(module)
                for module in modules
                if tensor_with_extension(module, emb).natural.kernel().members
                != torsion_indices(module, F)
            ]
            report.add(
                f"ker(M -> M ⊗ {name}) = t(M) en cíclicos",
                not mismatched,
                ", ".join(mismatched[:3]),
            )
            if is_ring_epimorphism(emb):
                report.add(f"{name} perfecto ⇒ {name} ⊆ Q_tot", T <= qtot)
                self._perfect_round_trip(qm, T, name, F, report)

    def _perfect_round_trip(
        self,
        qm: QMaxRealization,
        subring: Subring,
        name: str,
        F: GabrielFilter,
        report: VerificationReport,
    ) -> None:
        """Ida y vuelta entre una extensión perfecta y su filtro."""
        report.extend([check_gabriel_axioms(F)])
        report.add(f"τ_{name} fiel", is_faithful(F))
        report.add(
            f"τ_{name} = {{I : I·T = T}} dentro de Q_max",
            F == filter_of_subring(qm, subring),
        )
        try:
            recovered = ring_of_quotients(qm, F).subring
            report.add(f"R_F = {name}", recovered == subring)
        except QuotientLabError as e:
            report.add(f"R_F = {name}", False, str(e))
