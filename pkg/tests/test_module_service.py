import numpy as np
import pytest

from quotient_lab.domain.models.errors import ModuleValidationError
from quotient_lab.domain.models.module import FiniteModule
from quotient_lab.domain.models.ring import RingEmbedding
from quotient_lab.domain.services.ideal_service import enumerate_right_ideals
from quotient_lab.domain.services.module_service import (
    annihilator,
    colon_in_module,
    extension_module,
    free_module,
    hom,
    is_flat_left,
    is_nonsingular,
    is_projective,
    multiplication_image,
    presentation,
    quotient_module,
    regular_module,
    singular_submodule,
    tensor_with_extension,
)
from tests.conftest import SMALL


def _identity(ring) -> RingEmbedding:
    return RingEmbedding(ring, ring, np.eye(ring.rank, dtype=np.int64))


def test_regular_and_free_modules_are_valid(rings):
    for name in SMALL:
        R = rings[name]
        assert not regular_module(R).problems()
        free = free_module(R, 2).validate()
        assert free.order == R.order**2


def test_invalid_action_is_rejected(rings):
    R = rings["Z/4"]
    broken = FiniteModule(R, (2,), np.array([[[0]]], dtype=np.int64))
    with pytest.raises(ModuleValidationError):
        broken.validate()


def test_hom_from_regular_module_is_the_module(rings):
    for name in SMALL:
        R = rings[name]
        H = hom(regular_module(R), regular_module(R))
        assert H.order == R.order
        assert all(f.is_valid() for f in H.generators())


def test_hom_between_ideals_of_z4(rings):
    R = rings["Z/4"]
    two = enumerate_right_ideals(R)[1].as_module()
    assert hom(two, regular_module(R)).order == 2
    assert hom(regular_module(R), two).order == 2


def test_hom_listing_respects_limit(rings):
    R = rings["T2(F_2)"]
    H = hom(regular_module(R), regular_module(R))
    assert len(list(H.maps())) == 8
    with pytest.raises(ValueError):
        list(H.maps(limit=3))


def test_presentation_of_ideals(rings):
    for name in ("Z/4", "T2(F_2)", "quiver"):
        for ideal in enumerate_right_ideals(rings[name]):
            pres = presentation(ideal.as_module())
            assert pres.free_rank == ideal.as_module().rank


def test_tensor_with_identity_is_the_module(rings):
    for name in SMALL:
        R = rings[name]
        for ideal in enumerate_right_ideals(R):
            module = ideal.as_module()
            tensor = tensor_with_extension(module, _identity(R))
            assert tensor.order == module.order
            assert tensor.natural.kernel().is_zero()
            assert tensor.natural.is_valid()


def test_tensor_of_regular_module_with_qmax(qmax):
    qm = qmax["T2(F_2)"]
    tensor = tensor_with_extension(regular_module(qm.base), qm.embedding)
    assert tensor.order == qm.carrier.order
    assert tensor.module.validate()


def test_extension_module_restricts_scalars(qmax):
    qm = qmax["T2(F_2)"]
    module = extension_module(qm.embedding)
    assert module.ring is qm.base
    assert module.order == 16
    assert not module.problems()


def test_multiplication_image_of_whole_ring(qmax):
    qm = qmax["T2(F_2)"]
    image = multiplication_image(qm.embedding, range(qm.base.order))
    assert image == frozenset(range(qm.carrier.order))


def test_qmax_of_hereditary_ring_is_flat(qmax):
    assert is_flat_left(qmax["T2(F_2)"].embedding)
    assert is_flat_left(qmax["Z/4"].embedding)


def test_projectivity(rings):
    Z4 = rings["Z/4"]
    assert is_projective(regular_module(Z4))
    two = enumerate_right_ideals(Z4)[1]
    assert not is_projective(two.as_module())
    quotient, _ = quotient_module(regular_module(Z4), two.submodule)
    assert not is_projective(quotient)
    for ideal in enumerate_right_ideals(rings["T2(F_2)"]):
        assert is_projective(ideal.as_module())
    for ideal in enumerate_right_ideals(rings["M2(F_2)"]):
        assert is_projective(ideal.as_module())


def test_quotient_module_and_projection(rings):
    R = rings["Z/6"]
    ideal = enumerate_right_ideals(R)[1]
    quotient, projection = quotient_module(regular_module(R), ideal.submodule)
    assert quotient.order * ideal.order == R.order
    assert projection.is_valid()
    assert projection.is_surjective()
    assert projection.kernel().members == ideal.members


def test_annihilator_and_colon(rings):
    R = rings["Z/4"]
    M = regular_module(R)
    assert annihilator(M, 2) == frozenset({0, 2})
    assert annihilator(M, 1) == frozenset({0})
    two = M.submodule_generated([2])
    assert colon_in_module(M, two, 1) == frozenset({0, 2})


def test_singular_submodule(rings):
    Z4 = rings["Z/4"]
    assert singular_submodule(regular_module(Z4)).members == frozenset({0, 2})
    assert is_nonsingular(regular_module(rings["T2(F_2)"]))
    assert is_nonsingular(regular_module(rings["M2(F_2)"]))
    assert not is_nonsingular(regular_module(rings["quiver"]))
    assert not is_nonsingular(regular_module(rings["F_2[x]/(x^2)"]))


def test_simple_module_over_z4(rings):
    R = rings["Z/4"]
    two = enumerate_right_ideals(R)[1]
    simple, _ = quotient_module(regular_module(R), two.submodule)
    assert simple.order == 2
    assert hom(simple, regular_module(R)).order == 2
    assert singular_submodule(simple).members == frozenset(range(simple.order))
    assert not is_nonsingular(simple)
