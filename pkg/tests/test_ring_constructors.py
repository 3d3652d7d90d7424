import pytest

from quotient_lab.domain.models.errors import DefinitionError, ParseError
from quotient_lab.domain.services.ring_constructors import (
    cyclic_ring,
    group_ring,
    matrix_ring,
    parse_constructor,
    path_algebra,
    prime_field,
    product_ring,
    ring_from_definition,
    truncated_polynomial_ring,
    upper_triangular_ring,
)
from quotient_lab.domain.services.ring_service import find_isomorphism


@pytest.mark.parametrize(
    "text, order",
    [
        ("Z/4", 4),
        ("F_5", 5),
        ("F_2 x F_3", 6),
        ("F_2 × F_2 x F_2", 8),
        ("M2(F_2)", 16),
        ("T2(F_3)", 27),
        ("T_2(F_2 x F_2)", 64),
        ("F_2[x]/(x^3)", 8),
        ("F_3[C_2]", 9),
        ("(Z/4)[x]/(x^2)", 16),
        ("  T2( F_2 )  ", 8),
    ],
)
def test_parse_constructor_orders(text, order):
    assert parse_constructor(text).order == order


@pytest.mark.parametrize("text", ["Q_7", "M2(F_2", "F_2 x", "T2 F_2", "F_2 F_3", ""])
def test_parse_constructor_rejects_malformed_text(text):
    with pytest.raises(ParseError):
        parse_constructor(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_constructor("M2(F_2")
    assert "M2(F_2" in str(info.value)


@pytest.mark.parametrize("text", ["F_4", "Z/1", "F_2[x]/(x^0)", "F_2[C_0]"])
def test_parse_constructor_rejects_invalid_parameters(text):
    with pytest.raises(DefinitionError):
        parse_constructor(text)


def test_constructors_match_parser():
    F2 = prime_field(2)
    assert matrix_ring(2, F2).order == parse_constructor("M2(F_2)").order
    assert upper_triangular_ring(3, F2).order == 2**6
    assert product_ring(cyclic_ring(4), F2).order == 8
    assert truncated_polynomial_ring(F2, 1).order == 2


def test_group_algebra_is_dual_numbers_in_characteristic_two():
    dual = truncated_polynomial_ring(prime_field(2), 2)
    assert find_isomorphism(group_ring(prime_field(2), 2), dual) is not None


def test_chinese_remainder_isomorphism():
    assert find_isomorphism(cyclic_ring(6), parse_constructor("F_2 x F_3")) is not None


def test_path_algebra_dimensions():
    assert path_algebra(2, 2, [(0, 1)]).order == 2**3
    assert path_algebra(2, 3, [(0, 1), (1, 2)]).order == 2**6
    assert path_algebra(2, 3, [(0, 1), (1, 2)], [(0, 1)]).order == 2**5
    assert path_algebra(3, 2, [(0, 1), (0, 1)]).order == 3**4


def test_path_algebra_unit_is_sum_of_vertices():
    A = path_algebra(2, 3, [(0, 1), (1, 2)], [(0, 1)])
    assert A.unit == (1, 1, 1, 0, 0)


def test_path_algebra_rejects_cycles_and_broken_relations():
    with pytest.raises(DefinitionError):
        path_algebra(2, 2, [(0, 1), (1, 0)])
    with pytest.raises(DefinitionError):
        path_algebra(2, 3, [(0, 1), (1, 2)], [(1, 0)])
    with pytest.raises(DefinitionError):
        path_algebra(4, 2, [(0, 1)])


def test_ring_from_definition_variants():
    assert ring_from_definition("T2(F_2)").order == 8
    inline = {"moduli": [3], "unit": [1], "mul": [[[1]]]}
    assert ring_from_definition(inline, name="tres").name == "tres"
    path = {"path": {"p": 2, "vertices": 2, "arrows": [[0, 1]]}}
    assert ring_from_definition(path).order == 8


def test_ring_from_definition_rejects_bad_path_block():
    with pytest.raises(DefinitionError):
        ring_from_definition({"path": {"vertices": 2}})
