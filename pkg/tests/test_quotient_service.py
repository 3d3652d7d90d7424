import pytest

from quotient_lab.domain.models.errors import NotASubring, PreconditionFailure
from quotient_lab.domain.services.ideal_service import (
    enumerate_right_ideals,
    lambek_filter,
    trivial_filter,
)
from quotient_lab.domain.services.module_service import (
    regular_module,
    tensor_with_extension,
)
from quotient_lab.domain.services.quotient_service import (
    classical_theory,
    closure,
    colon_in_carrier,
    cyclic_modules,
    extension_theory,
    filter_of_subring,
    goldie_theory,
    is_faithful,
    is_kasch,
    is_perfect_extension,
    is_perfect_filter,
    is_ring_epimorphism,
    lambek_theory,
    membership_subring,
    ring_of_quotients,
    tensor_collapses,
    theory_by_name,
    torsion_submodule,
)
from tests.conftest import SMALL


@pytest.mark.parametrize(
    "name, order",
    [
        ("F_2", 2),
        ("Z/4", 4),
        ("Z/6", 6),
        ("M2(F_2)", 16),
        ("T2(F_2)", 16),
        ("T2(F_3)", 81),
        ("F_2[x]/(x^2)", 4),
        ("quiver", 32),
    ],
)
def test_qmax_orders(qmax, name, order):
    assert qmax[name].carrier.order == order


def test_qmax_realization_is_consistent(qmax):
    for name in SMALL:
        qm = qmax[name]
        assert qm.embedding.is_valid()
        assert qm.lambda_image.order == qm.base.order
        assert qm.lambda_image <= qm.full
        # λ(r) está en λ(R), así que (R : λ(r)) = R
        for q in qm.lambda_image.sorted_members:
            assert len(qm.colon(q)) == qm.base.order


def test_colon_of_new_quotient_is_dense(qmax):
    qm = qmax["T2(F_2)"]
    dense = lambek_filter(qm.base)
    outside = sorted(qm.full.members - qm.lambda_image.members)
    assert outside
    for q in outside:
        ideal = colon_in_carrier(qm, q)
        assert ideal in dense
        assert not ideal.is_whole()


def test_ring_of_quotients_of_lambek_filter_is_qmax(qmax):
    for name in SMALL:
        qm = qmax[name]
        quotient = ring_of_quotients(qm, lambek_filter(qm.base))
        assert quotient.members == qm.full.members


def test_ring_of_quotients_of_trivial_filter_is_the_ring(qmax):
    qm = qmax["T2(F_2)"]
    quotient = ring_of_quotients(qm, trivial_filter(qm.base))
    assert quotient.members == qm.lambda_image.members


def test_membership_subring_rejects_bad_sets(qmax):
    qm = qmax["T2(F_2)"]
    with pytest.raises(NotASubring):
        membership_subring(qm, [0])
    extra = sorted(qm.full.members - qm.lambda_image.members)[0]
    with pytest.raises(NotASubring):
        membership_subring(qm, qm.lambda_image.members | {extra})


def test_filter_of_full_carrier_is_lambek_for_flat_qmax(qmax):
    qm = qmax["T2(F_2)"]
    assert filter_of_subring(qm, qm.full) == lambek_filter(qm.base)


def test_torsion_theories_by_name(rings):
    R = rings["Z/4"]
    assert theory_by_name("lambek", R).filter == lambek_theory(R).filter
    assert theory_by_name("goldie", R).name == "goldie"
    with pytest.raises(ValueError):
        theory_by_name("desconocida", R)


def test_goldie_torsion_of_z4_is_everything(rings):
    R = rings["Z/4"]
    M = regular_module(R)
    assert torsion_submodule(M, goldie_theory(R)).order == 4
    assert torsion_submodule(M, lambek_theory(R)).is_zero()
    assert torsion_submodule(M, classical_theory(R)).is_zero()


def test_torsion_agrees_with_tensor_kernel(qmax):
    qm = qmax["T2(F_2)"]
    theory = extension_theory(qm.embedding)
    torsion_orders = []
    for module in cyclic_modules(qm.base):
        torsion = torsion_submodule(module, theory)
        kernel = tensor_with_extension(module, qm.embedding).natural.kernel()
        assert torsion.members == kernel.members
        torsion_orders.append(torsion.order)
    assert max(torsion_orders) > 1


def test_extension_theory_of_rationally_closed_ring(qmax):
    qm = qmax["quiver"]
    assert qm.carrier.order == qm.base.order
    assert extension_theory(qm.embedding).filter == trivial_filter(qm.base)


def test_closure_of_zero_submodule(rings):
    R = rings["Z/4"]
    M = regular_module(R)
    zero = M.submodule_generated([])
    assert closure(M, zero, goldie_theory(R)).order == 4
    assert closure(M, zero, lambek_theory(R)).is_zero()


def test_faithfulness(rings):
    for name in SMALL:
        R = rings[name]
        assert is_faithful(lambek_filter(R))
    R = rings["Z/4"]
    assert not is_faithful(goldie_theory(R).filter)


def test_epimorphisms_and_perfect_extensions(qmax):
    qm = qmax["T2(F_2)"]
    assert is_ring_epimorphism(qm.embedding)
    assert is_perfect_extension(qm.embedding)
    assert is_ring_epimorphism(qm.extension(qm.lambda_image))


def test_tensor_collapses_along_chain(qmax):
    qm = qmax["T2(F_2)"]
    assert tensor_collapses(qm, qm.lambda_image, qm.full)
    assert tensor_collapses(qm, qm.full, qm.full)


def test_lambek_filter_is_perfect_for_hereditary_ring(qmax):
    qm = qmax["T2(F_2)"]
    evidence = is_perfect_filter(qm, lambek_filter(qm.base))
    assert evidence.perfect
    assert evidence.quotient_order == 16
    assert all(clause.passed for clause in evidence.sampling)
    assert len(evidence.sampling) == len(enumerate_right_ideals(qm.base))


def test_goldie_filter_of_singular_ring_is_rejected(qmax):
    qm = qmax["Z/4"]
    goldie = goldie_theory(qm.base).filter
    assert not is_faithful(goldie)
    with pytest.raises(PreconditionFailure):
        is_perfect_filter(qm, goldie)
    with pytest.raises(PreconditionFailure):
        ring_of_quotients(qm, goldie)


def test_faithful_filters_lie_inside_lambek(qmax):
    for name in SMALL:
        qm = qmax[name]
        lambek = lambek_filter(qm.base)
        for F in (trivial_filter(qm.base), lambek, filter_of_subring(qm, qm.full)):
            assert is_faithful(F)
            assert F <= lambek


def test_kasch(qmax):
    assert is_kasch(qmax["Z/4"])
    assert is_kasch(qmax["T2(F_2)"])
    assert is_kasch(qmax["F_2[x]/(x^2)"])


def test_extension_theory_rejects_non_flat_extension(qmax, monkeypatch):
    from quotient_lab.domain.services import quotient_service

    monkeypatch.setattr(quotient_service, "is_flat_left", lambda emb: False)
    with pytest.raises(PreconditionFailure):
        extension_theory(qmax["Z/4"].embedding)
