import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotient_lab.domain.models.errors import (
    AssociativityViolation,
    CapExceeded,
    CompatibilityViolation,
    DefinitionError,
    RingValidationError,
    UnitViolation,
)
from quotient_lab.domain.services.quotient_service import build_qmax
from quotient_lab.domain.services.ring_service import (
    check_ring_axioms,
    enumerate_intermediate_subrings,
    find_isomorphism,
    full_subring,
    is_semisimple,
    is_von_neumann_regular,
    opposite_ring,
    regular_elements,
    subring_generated,
    units,
    validate_ring,
)


def _is_associative(M: np.ndarray) -> bool:
    idx = np.arange(len(M))
    lhs = M[M[:, :, None], idx[None, None, :]]
    rhs = M[idx[:, None, None], M[None, :, :]]
    return bool((lhs == rhs).all())


Z4 = {"name": "Z/4", "moduli": [4], "unit": [1], "mul": [[[1]]]}


def test_validate_ring_accepts_cyclic_ring():
    ring = validate_ring(Z4)
    assert ring.order == 4
    assert ring.unit_index == 1


def test_validate_ring_rejects_bad_shape():
    with pytest.raises(DefinitionError):
        validate_ring({"moduli": [2, 2], "unit": [1, 0], "mul": [[[1]]]})


def test_validate_ring_rejects_missing_fields():
    with pytest.raises(DefinitionError):
        validate_ring({"moduli": [2]})


def test_validate_ring_rejects_incompatible_moduli():
    # e_0 de orden 2 con e_0·e_0 = e_1 de orden 3
    definition = {
        "moduli": [2, 3],
        "unit": [1, 0],
        "mul": [[[0, 1], [0, 0]], [[0, 0], [0, 0]]],
    }
    with pytest.raises(CompatibilityViolation):
        validate_ring(definition)


def test_validate_ring_rejects_missing_unit():
    with pytest.raises(UnitViolation):
        validate_ring({"moduli": [2], "unit": [0], "mul": [[[1]]]})


def test_validate_ring_rejects_non_associative_product():
    # e_0 e_1 = e_1 y e_1 e_0 = e_0: (e_1 e_0) e_1 != e_1 (e_0 e_1)
    mul = np.zeros((2, 2, 2), dtype=int)
    mul[0, 0] = [1, 0]
    mul[0, 1] = [0, 1]
    mul[1, 0] = [1, 0]
    mul[1, 1] = [0, 0]
    with pytest.raises(AssociativityViolation):
        validate_ring({"moduli": [2, 2], "unit": [1, 0], "mul": mul.tolist()})


@given(
    st.lists(st.integers(0, 1), min_size=8, max_size=8),
    st.tuples(st.integers(0, 1), st.integers(0, 1)),
)
@settings(max_examples=80, deadline=None)
def test_random_structures_are_accepted_or_rejected_with_a_witness(entries, unit):
    definition = {
        "moduli": [2, 2],
        "unit": list(unit),
        "mul": np.array(entries).reshape(2, 2, 2).tolist(),
    }
    try:
        ring = validate_ring(definition)
    except RingValidationError as e:
        assert str(e)
        return
    assert _is_associative(ring.mul_table)
    assert (ring.mul_table[ring.unit_index] == np.arange(ring.order)).all()


def test_mul_table_is_associative_on_corpus(rings):
    for ring in rings.values():
        assert _is_associative(ring.mul_table)


def test_subring_generated_by_unit_is_prime_subring(rings):
    ring = rings["M2(F_2)"]
    prime = subring_generated(ring, [])
    assert prime.order == 2


def test_intermediate_subrings_of_triangular_extension(qmax):
    qm = qmax["T2(F_2)"]
    found = enumerate_intermediate_subrings(qm.embedding)
    orders = sorted(s.order for s in found)
    assert orders[0] == 8
    assert orders[-1] == 16
    assert full_subring(qm.carrier) in found


def test_intermediate_subrings_are_closed_under_intersection(qmax):
    for name in ("T2(F_2)", "T2(F_3)"):
        qm = qmax[name]
        found = enumerate_intermediate_subrings(qm.embedding)
        by_members = {s.members for s in found}
        assert qm.lambda_image.members in by_members
        for first in found:
            assert qm.lambda_image <= first
            for second in found:
                assert first.members & second.members in by_members


def test_subring_generated_is_idempotent(qmax):
    qm = qmax["T2(F_3)"]
    for subring in enumerate_intermediate_subrings(qm.embedding):
        again = subring_generated(qm.carrier, subring.members)
        assert again == subring
        assert subring_generated(again, again.sorted_members) == again


def test_intermediate_subrings_cap(qmax):
    qm = qmax["T2(F_2)"]
    with pytest.raises(CapExceeded):
        enumerate_intermediate_subrings(qm.embedding, cap=1)


def test_regularity_flags(rings):
    assert is_von_neumann_regular(rings["M2(F_2)"])
    assert is_von_neumann_regular(rings["F_2 x F_2"])
    assert not is_von_neumann_regular(rings["Z/4"])
    assert not is_von_neumann_regular(rings["T2(F_2)"])


def test_semisimple_flags(rings):
    assert is_semisimple(rings["Z/6"])
    assert not is_semisimple(rings["F_2[x]/(x^2)"])


def test_regular_elements_are_units(rings):
    for ring in rings.values():
        regular = regular_elements(ring)
        assert all(element.is_unit for element in regular)
        assert {e.element.index for e in regular} == units(ring)


def test_units_of_z4(rings):
    assert units(rings["Z/4"]) == frozenset({1, 3})


def test_opposite_of_triangular_ring_is_valid(rings):
    op = opposite_ring(rings["T2(F_2)"])
    check_ring_axioms(op)
    assert op.order == 8


def test_qmax_of_triangular_ring_is_matrix_ring(rings):
    carrier = build_qmax(rings["T2(F_2)"]).carrier
    iso = find_isomorphism(rings["M2(F_2)"], carrier)
    assert iso is not None
    assert iso.is_valid()
    assert len(set(iso.index_map.tolist())) == 16


def test_no_isomorphism_between_different_rings(rings):
    assert find_isomorphism(rings["Z/4"], rings["F_2 x F_2"]) is None
    assert find_isomorphism(rings["F_2[x]/(x^2)"], rings["F_2 x F_2"]) is None
