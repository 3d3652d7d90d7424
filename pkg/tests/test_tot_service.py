import numpy as np
import pytest

from quotient_lab.domain.models.errors import PreconditionFailure
from quotient_lab.domain.models.ideals import RightIdeal
from quotient_lab.domain.models.quotients import QMaxRealization
from quotient_lab.domain.models.ring import RingEmbedding
from quotient_lab.domain.services.ideal_service import (
    lambek_filter,
    right_ideal_generated,
)
from quotient_lab.domain.services.module_service import (
    hom,
    is_flat_left,
    regular_module,
)
from quotient_lab.domain.services.quotient_service import (
    is_perfect_extension,
    is_ring_epimorphism,
    spans_subring,
)
from quotient_lab.domain.services.ring_constructors import parse_constructor
from quotient_lab.domain.services.ring_service import enumerate_intermediate_subrings
from quotient_lab.domain.services.tot_service import METHODS
from tests.conftest import SMALL


def test_chains_reach_the_same_fixpoint(qmax, tot):
    for name in SMALL:
        qm = qmax[name]
        morita = tot.morita_chain(qm, with_flags=False)
        simplified = tot.simplified_chain(qm, with_flags=False)
        assert morita.fixpoint == simplified.fixpoint, name
        assert morita.gamma == simplified.gamma, name
        assert [s.order for s in morita.steps] == [s.order for s in simplified.steps]


def test_chain_is_strictly_decreasing(qmax, tot):
    for name in SMALL:
        report = tot.morita_chain(qmax[name], with_flags=False)
        orders = [step.order for step in report.steps]
        assert orders == sorted(orders, reverse=True)
        assert len(set(orders)) == len(orders)
        assert report.steps[0].subring == qmax[name].full
        assert qmax[name].lambda_image <= report.fixpoint


def test_triangular_ring_has_qtot_equal_to_qmax(qmax, tot):
    qm = qmax["T2(F_2)"]
    report = tot.simplified_chain(qm)
    assert report.gamma == 0
    assert report.fixpoint.order == 16
    step = report.steps[0]
    assert step.flat_left and step.epimorphism and step.perfect_extension
    assert step.filter_perfect
    assert step.filter_size == len(lambek_filter(qm.base))


def test_chain_report_serialization(qmax, tot):
    data = tot.morita_chain(qmax["Z/4"]).to_dict()
    assert data["method"] == "morita"
    assert data["gamma"] == 0
    assert data["fixpoint"]["order"] == 4
    assert len(data["steps"]) == 1


def test_chain_filters_start_with_lambek(qmax, tot):
    qm = qmax["T2(F_2)"]
    report = tot.morita_chain(qm, with_flags=False)
    filters = tot.chain_filters(qm, report)
    assert len(filters) == report.gamma + 2
    assert filters[0] == lambek_filter(qm.base)
    assert filters[-1] == filters[-2]


def test_filter_basis_witness_generates_spanning_ideals(qmax, tot):
    qm = qmax["T2(F_2)"]
    report = tot.simplified_chain(qm, with_flags=False)
    for step in report.steps:
        assert step.basis_witness
        for chosen in step.basis_witness:
            ideal = right_ideal_generated(qm.base, chosen)
            assert spans_subring(qm, ideal.members, step.subring)


def test_methods_agree(qmax, tot):
    for name in SMALL:
        qm = qmax[name]
        results = {}
        for method in METHODS:
            try:
                results[method] = tot.qtot(qm, method)
            except PreconditionFailure:
                assert method == "shortcut"
        assert len({subring.members for subring in results.values()}) == 1, name


def test_qtot_of_larger_triangular_ring(qmax, tot):
    qm = qmax["T2(F_3)"]
    assert tot.qtot(qm, "shortcut").order == 81
    assert tot.qtot(qm, "filter").order == 81


def test_unknown_method(qmax, tot):
    with pytest.raises(ValueError):
        tot.qtot(qmax["F_2"], "magia")


def test_semihereditary_shortcut(qmax, tot):
    assert tot.is_right_semihereditary(qmax["T2(F_2)"].base)
    assert tot.is_right_semihereditary(qmax["M2(F_2)"].base)
    assert not tot.is_right_semihereditary(qmax["Z/4"].base)
    shortcut = tot.qtot_shortcut(qmax["T2(F_2)"])
    assert shortcut.order == 16
    assert shortcut.filter == lambek_filter(qmax["T2(F_2)"].base)
    with pytest.raises(PreconditionFailure):
        tot.qtot_shortcut(qmax["Z/4"])


def test_brute_force_oracle(qmax, tot):
    assert tot.brute_force_qtot(qmax["T2(F_2)"]).order == 16
    assert tot.brute_force_qtot(qmax["Z/4"]).order == 4


def test_qtot_membership_check(qmax, tot):
    for name in SMALL:
        qm = qmax[name]
        qtot = tot.qtot(qm, "filter")
        assert tot.qtot_membership_check(qm, qtot).passed


def test_condition_reports(qmax, tot):
    report = tot.condition_report(qmax["T2(F_2)"], "C")
    assert report.verdict is True
    assert report.examined == 2
    report = tot.condition_report(qmax["Z/4"], "C'")
    assert report.verdict is True
    assert report.examined == 1
    assert report.to_dict()["witness"] is None


def test_condition_report_cap(qmax, tot):
    report = tot.condition_report(qmax["T2(F_2)"], "C", cap=1)
    assert report.verdict is None
    assert report.cap_exceeded
    with pytest.raises(ValueError):
        tot.condition_report(qmax["T2(F_2)"], "D")


def _diagonal() -> QMaxRealization:
    """F_2 ⊆ F_2 x F_2 por la diagonal, con el portador entero como extensión."""
    R, S = parse_constructor("F_2"), parse_constructor("F_2 x F_2")
    emb = RingEmbedding(R, S, np.array([S.unit], dtype=np.int64))
    regular = regular_module(R)
    whole = RightIdeal(R, frozenset(range(R.order)))
    return QMaxRealization(R, whole, regular, S, emb, hom(regular, regular))


def test_diagonal_is_flat_but_not_an_epimorphism():
    qm = _diagonal()
    assert not qm.embedding.problems()
    assert is_flat_left(qm.embedding)
    assert not is_ring_epimorphism(qm.embedding)
    assert not is_perfect_extension(qm.embedding)
    assert len(enumerate_intermediate_subrings(qm.embedding)) == 2


def test_morita_step_on_diagonal_drops_to_the_ring(tot):
    qm = _diagonal()
    assert qm.lambda_image.order == 2
    assert tot.morita_prime(qm, qm.full) == qm.lambda_image
    report = tot.morita_chain(qm, with_flags=False)
    assert report.gamma == 1
    assert report.fixpoint == qm.lambda_image


def test_filter_step_matches_full_carrier_scan(qmax, tot):
    for name in SMALL:
        qm = qmax[name]
        report = tot.simplified_chain(qm, with_flags=False)
        for step in report.steps:
            expected = frozenset(
                q
                for q in range(qm.carrier.order)
                if spans_subring(qm, qm.colon(q), step.subring)
            )
            following = tot.filter_step(qm, step.subring)
            assert following.members == expected, name
            assert following <= step.subring, name


def test_filter_step_from_the_ring_returns_the_ring(qmax, tot):
    qm = qmax["T2(F_2)"]
    assert tot.filter_step(qm, qm.lambda_image) == qm.lambda_image


def test_shortcut_chain_trace(qmax, tot):
    qm = qmax["T2(F_2)"]
    report = tot.shortcut_chain(qm)
    assert report.method == "shortcut"
    assert report.gamma == 0
    assert report.fixpoint == qm.full
    step = report.steps[0]
    assert step.filter_size == len(lambek_filter(qm.base))
    assert step.perfect_extension
    for chosen in step.basis_witness:
        ideal = right_ideal_generated(qm.base, chosen)
        assert spans_subring(qm, ideal.members, qm.full)
    with pytest.raises(PreconditionFailure):
        tot.shortcut_chain(qmax["Z/4"])


def test_oracle_report_lists_perfect_extensions(qmax, tot):
    qm = qmax["T2(F_2)"]
    report = tot.oracle_report(qm)
    assert report.examined == 2
    assert [step.order for step in report.perfect] == [8, 16]
    assert report.fixpoint.members == qm.full.members
    data = report.to_dict()
    assert data["method"] == "oracle"
    assert data["fixpoint"]["order"] == 16
    assert all(step["perfect_extension"] for step in data["steps"])
