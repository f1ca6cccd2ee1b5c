import pytest

from utils.errors import CapExceededError, GroupError
from utils.group_utils import (
    General,
    PrimePowerHomocyclic,
    TwoFour,
    cyclic_subgroup,
    element_order,
    elementary_divisors,
    elements,
    generated_subgroup,
    group_spectrum,
    group_z2r4s,
    group_zpmn,
    invariant_factors,
    is_cyclic,
    is_power_of,
    make_group,
    order_class_counts,
)


@pytest.mark.parametrize(
    "factors,expected",
    [
        ([4, 4], PrimePowerHomocyclic(p=2, m=2, n=2)),
        ([2, 4], TwoFour(r=1, s=1)),
        ([6], General()),
        ([8], PrimePowerHomocyclic(p=2, m=3, n=1)),
        ([2, 2, 4, 4], TwoFour(r=2, s=2)),
        ([4, 2], General()),
        ([], General()),
    ],
)
def test_make_group_detects_family(factors, expected):
    assert make_group(factors).family == expected


@pytest.mark.parametrize("factors", [[1], [0, 4], [2, -3], [2.0], [True]])
def test_make_group_rejects_bad_factors(factors):
    with pytest.raises(GroupError):
        make_group(factors)


def test_descriptor_and_order():
    G = make_group([2, 2, 4])
    assert G.descriptor() == "Z2^2 x Z4"
    assert str(G) == "Z2^2 x Z4"
    assert G.order == 16
    assert G.exponent == 4
    assert make_group([]).descriptor() == "1"
    assert make_group([]).order == 1


@pytest.mark.parametrize(
    "factors,element,expected",
    [
        ([2, 4], (1, 2), 2),
        ([4, 4], (0, 0), 1),
        ([2, 4], (1, 1), 4),
        ([8], (6,), 4),
        ([], (), 1),
    ],
)
def test_element_order(factors, element, expected):
    assert element_order(make_group(factors), element) == expected


@pytest.mark.parametrize("element", [(2, 0), (0, 4), (1,), (0, -1)])
def test_element_order_rejects_invalid_coordinates(element):
    with pytest.raises(GroupError):
        element_order(make_group([2, 4]), element)


@pytest.mark.parametrize(
    "factors,expected",
    [([8], (1, 2, 4, 8)), ([2, 2], (1, 2)), ([], (1,)), ([2, 3], (1, 2, 3, 6))],
)
def test_group_spectrum(factors, expected):
    assert group_spectrum(make_group(factors)) == expected


def test_group_spectrum_beyond_cap_uses_exponent_divisors():
    G = group_zpmn(5, 2, 3)
    assert group_spectrum(G, cap=100) == (1, 5, 25)


@pytest.mark.parametrize(
    "factors", [[2, 2], [2, 4], [4, 4], [3, 9], [2, 2, 2], [6, 4], [5, 5], [8, 2]]
)
def test_group_spectrum_is_divisor_set_of_exponent(factors):
    G = make_group(factors)
    enumerated = group_spectrum(G)
    assert enumerated == group_spectrum(G, cap=1)
    for a in elements(G):
        assert G.exponent % element_order(G, a) == 0


@pytest.mark.parametrize(
    "factors,expected",
    [([2, 4], {1: 1, 2: 3, 4: 4}), ([3], {1: 1, 3: 2}), ([2, 2], {1: 1, 2: 3})],
)
def test_order_class_counts(factors, expected):
    counts = order_class_counts(make_group(factors))
    assert counts == expected
    assert sum(counts.values()) == make_group(factors).order


def test_order_class_counts_refuses_beyond_cap():
    with pytest.raises(CapExceededError) as info:
        order_class_counts(group_zpmn(2, 1, 6), cap=32)
    assert info.value.size == 64
    assert info.value.cap == 32


@pytest.mark.parametrize(
    "factors,a,b,expected",
    [
        ([8], (1,), (5,), True),
        ([2, 4], (0, 1), (0, 2), True),
        ([2, 4], (0, 2), (0, 1), False),
        ([2, 4], (1, 1), (0, 0), True),
        ([2, 4], (1, 0), (0, 2), False),
    ],
)
def test_is_power_of(factors, a, b, expected):
    assert is_power_of(make_group(factors), a, b) is expected


@pytest.mark.parametrize("factors", [[2, 4], [4, 4], [3, 3], [2, 2, 2]])
def test_mutual_powers_generate_the_same_subgroup(factors):
    G = make_group(factors)
    for a in elements(G):
        for b in elements(G):
            mutual = is_power_of(G, a, b) and is_power_of(G, b, a)
            assert mutual == (generated_subgroup(G, a) == generated_subgroup(G, b))


def test_cyclic_subgroup_starts_at_identity():
    G = make_group([2, 4])
    assert cyclic_subgroup(G, (1, 1)) == [(0, 0), (1, 1), (0, 2), (1, 3)]


def test_elements_are_lexicographic():
    assert list(elements(make_group([2, 3]))) == [
        (0, 0),
        (0, 1),
        (0, 2),
        (1, 0),
        (1, 1),
        (1, 2),
    ]


@pytest.mark.parametrize(
    "factors,divisors,invariants,cyclic",
    [
        ([6], (2, 3), (6,), True),
        ([2, 3], (2, 3), (6,), True),
        ([2, 4], (2, 4), (2, 4), False),
        ([12, 18], (2, 3, 4, 9), (6, 36), False),
        ([], (), (), True),
    ],
)
def test_divisors_and_invariant_factors(factors, divisors, invariants, cyclic):
    G = make_group(factors)
    assert elementary_divisors(G) == divisors
    assert invariant_factors(G) == invariants
    assert is_cyclic(G) is cyclic


def test_family_constructors():
    assert group_zpmn(3, 2, 2).factors == (9, 9)
    assert group_z2r4s(2, 1).factors == (2, 2, 4)
    with pytest.raises(GroupError):
        group_z2r4s(1, 0)
    with pytest.raises(GroupError):
        group_zpmn(2, 0, 1)
