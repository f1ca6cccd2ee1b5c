import time

import pytest

from utils.errors import GroupError, SpectrumError
from utils.expr_utils import (
    expr_spectrum,
    power_graph_expr_z2r4s,
    power_graph_expr_zpmn,
    structure_expr,
)
from utils.formula_utils import (
    ZpmnParams,
    closed_form_paths,
    count_order2_z2r4s,
    count_order4_z2r4s,
    degree_class_counts_z2r4s,
    degree_order2_closed,
    distinct_eigenvalue_count_zpmn,
    dropped_terms,
    euler_phi_prime_power,
    expected_containment,
    expected_distinct_count,
    expected_planar_containment,
    group_orders_contained,
    is_flower_zpmn,
    is_planar_power_graph_abelian,
    is_power_graph_complete,
    joined_eigenvalue_c,
    joined_eigenvalue_c_nested,
    laplacian_spectrum_z2r4s,
    laplacian_spectrum_zpmn,
    order2_lies_in_cyclic4,
    rs_parameters,
    spectrum_containment_zpmn,
    z2r4s_terms,
    zpmn_terms,
)
from utils.group_utils import group_z2r4s, group_zpmn, make_group
from utils.spectrum_utils import FactoredSpectrum

PMN_GRID = [(p, m, n) for p in (2, 3, 5, 7) for m in (1, 2, 3) for n in (1, 2, 3, 4)]
RS_GRID = [(r, s) for r in range(0, 6) for s in range(1, 5)]


def S(mapping):
    return FactoredSpectrum.from_mapping(mapping)


def test_params_validation():
    with pytest.raises(SpectrumError):
        ZpmnParams(4, 1, 1)
    with pytest.raises(SpectrumError):
        ZpmnParams(2, 0, 1)
    params = ZpmnParams(3, 2, 2)
    assert params.l == 4
    assert params.order == 81


@pytest.mark.parametrize("p,k,expected", [(2, 1, 1), (2, 2, 2), (3, 2, 6), (5, 3, 100)])
def test_euler_phi_prime_power(p, k, expected):
    assert euler_phi_prime_power(p, k) == expected


@pytest.mark.parametrize(
    "params,i,expected",
    [((2, 2, 2), 1, 6), ((3, 2, 2), 1, 21), ((3, 3, 1), 1, 27), ((3, 3, 1), 2, 27)],
)
def test_joined_eigenvalue_c(params, i, expected):
    assert joined_eigenvalue_c(i, ZpmnParams(*params)) == expected


@pytest.mark.parametrize("params", PMN_GRID)
def test_joined_eigenvalue_c_nested_agrees(params):
    params = ZpmnParams(*params)
    for i in range(1, params.m):
        assert joined_eigenvalue_c(i, params) == joined_eigenvalue_c_nested(i, params)


def test_joined_eigenvalue_c_range():
    with pytest.raises(SpectrumError):
        joined_eigenvalue_c(2, ZpmnParams(2, 2, 2))


@pytest.mark.parametrize(
    "params,expected",
    [
        ((2, 2, 2), {0: 1, 1: 2, 2: 3, 4: 6, 6: 3, 16: 1}),
        ((2, 3, 1), {0: 1, 8: 7}),
        ((3, 1, 2), {0: 1, 1: 3, 3: 4, 9: 1}),
    ],
)
def test_laplacian_spectrum_zpmn(params, expected):
    assert laplacian_spectrum_zpmn(ZpmnParams(*params)) == S(expected)


@pytest.mark.parametrize(
    "rs,expected",
    [
        ((0, 1), {0: 1, 4: 3}),
        ((2, 1), {0: 1, 1: 6, 2: 3, 4: 4, 10: 1, 16: 1}),
        ((1, 1), {0: 1, 1: 2, 2: 1, 4: 2, 6: 1, 8: 1}),
    ],
)
def test_laplacian_spectrum_z2r4s(rs, expected):
    assert laplacian_spectrum_z2r4s(*rs) == S(expected)


def test_laplacian_spectrum_z2r4s_trace():
    assert laplacian_spectrum_z2r4s(2, 1).trace == 54


def test_laplacian_spectrum_z2r4s_rejects_s_zero():
    with pytest.raises(SpectrumError):
        laplacian_spectrum_z2r4s(3, 0)


@pytest.mark.parametrize("params", PMN_GRID)
def test_zpmn_closed_form_matches_calculus(params):
    spectrum = laplacian_spectrum_zpmn(ZpmnParams(*params))
    assert spectrum == expr_spectrum(power_graph_expr_zpmn(*params))
    assert spectrum.total == ZpmnParams(*params).order


@pytest.mark.parametrize("rs", RS_GRID)
def test_z2r4s_closed_form_matches_calculus(rs):
    r, s = rs
    spectrum = laplacian_spectrum_z2r4s(r, s)
    assert spectrum == expr_spectrum(power_graph_expr_z2r4s(r, s))
    assert spectrum.total == 2 ** (r + 2 * s)


@pytest.mark.parametrize(
    "p,m", [(p, m) for p in (2, 3, 5, 7, 11, 13) for m in range(1, 8) if p**m <= 128]
)
def test_cyclic_collapse(p, m):
    q = p**m
    params = ZpmnParams(p, m, 1)
    assert laplacian_spectrum_zpmn(params) == S({0: 1, q: q - 1})
    for i in range(1, m):
        assert joined_eigenvalue_c(i, params) == q


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_cross_family_consistency(s):
    assert laplacian_spectrum_z2r4s(0, s) == laplacian_spectrum_zpmn(ZpmnParams(2, 2, s))


def test_dropped_terms():
    assert [t.provenance for t in dropped_terms(zpmn_terms(ZpmnParams(2, 1, 2)))] == ["x - p^m"]
    assert [t.provenance for t in dropped_terms(zpmn_terms(ZpmnParams(5, 2, 1)))] == [
        "x - 1",
        "x - p^1",
    ]
    assert [t.provenance for t in dropped_terms(z2r4s_terms(0, 1))] == ["x - 1", "x - 2"]


@pytest.mark.parametrize(
    "params,actual,claimed",
    [((3, 2, 2), 6, 6), ((2, 1, 2), 3, 4), ((2, 2, 2), 6, 6), ((3, 3, 1), 2, 8)],
)
def test_distinct_eigenvalue_count(params, actual, claimed):
    count = distinct_eigenvalue_count_zpmn(ZpmnParams(*params))
    assert (count.actual, count.claimed) == (actual, claimed)
    assert count.matches is (actual == claimed)


@pytest.mark.parametrize("params", PMN_GRID)
def test_distinct_count_follows_documented_rule(params):
    p, m, n = params
    params = ZpmnParams(*params)
    actual = distinct_eigenvalue_count_zpmn(params).actual
    assert actual == expected_distinct_count(params)
    if n >= 2 and (p != 2 or m >= 2):
        assert actual == 2 * (m + 1)
    elif n == 1:
        assert actual == 2
    else:
        assert actual == 3


@pytest.mark.parametrize("params", PMN_GRID)
def test_containment_follows_documented_rule(params):
    p, m, n = params
    params = ZpmnParams(*params)
    contained = spectrum_containment_zpmn(params)
    assert contained is expected_containment(params)
    if n == 1:
        # the cyclic group has spectrum {0, p^m} only
        assert not contained
    elif p == 2 and m == 1:
        # Z_2^n has spectrum {0, 1, 2^n}
        assert not contained
    else:
        assert contained


def test_containment_fails_for_elementary_abelian_2_groups():
    for n in (2, 3, 4):
        params = ZpmnParams(2, 1, n)
        assert laplacian_spectrum_zpmn(params) == S({0: 1, 1: 2**n - 2, 2**n: 1})
        assert spectrum_containment_zpmn(params) is False


@pytest.mark.parametrize(
    "factors,expected",
    [
        ([2], False),
        ([4], False),
        ([3], False),
        ([], False),
        ([2, 2], False),
        ([2, 2, 2], False),
        ([3, 3], True),
        ([4, 4], True),
        ([2, 4], True),
        ([2, 2, 4, 4], True),
    ],
)
def test_expected_planar_containment(factors, expected):
    G = make_group(factors)
    assert expected_planar_containment(G) is expected
    spectrum = expr_spectrum(structure_expr(G))
    assert group_orders_contained(G, spectrum) is expected


def test_containment_examples():
    assert not spectrum_containment_zpmn(ZpmnParams(2, 3, 1))
    assert spectrum_containment_zpmn(ZpmnParams(2, 2, 2))
    assert spectrum_containment_zpmn(ZpmnParams(3, 1, 2))


def test_large_parameters_without_realization():
    start = time.perf_counter()
    params = ZpmnParams(5, 2, 3)
    spectrum = laplacian_spectrum_zpmn(params)
    assert spectrum.total == 5**6 == 15625
    assert {1, 5, 25} <= set(spectrum.eigenvalues)
    assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize(
    "factors,expected",
    [
        ([8], True),
        ([2, 2], False),
        ([], True),
        ([2, 3], False),
        ([3, 9], False),
        ([27], True),
    ],
)
def test_is_power_graph_complete(factors, expected):
    assert is_power_graph_complete(make_group(factors)) is expected


@pytest.mark.parametrize(
    "params,expected", [((3, 1, 2), True), ((2, 2, 2), False), ((5, 1, 1), False)]
)
def test_is_flower_zpmn(params, expected):
    assert is_flower_zpmn(ZpmnParams(*params)) is expected


@pytest.mark.parametrize(
    "factors,expected",
    [
        ([4, 4, 4], True),
        ([8], False),
        ([2, 2, 4], True),
        ([3, 3, 3], True),
        ([2, 2], True),
        ([], True),
        ([2, 3], False),
        ([9], False),
        ([4, 2], True),
    ],
)
def test_is_planar_power_graph_abelian(factors, expected):
    assert is_planar_power_graph_abelian(make_group(factors)) is expected


@pytest.mark.parametrize(
    "rs,order2,order4", [((1, 1), 3, 4), ((0, 1), 1, 2), ((2, 2), 15, 48)]
)
def test_order_counts(rs, order2, order4):
    assert count_order2_z2r4s(*rs) == order2
    assert count_order4_z2r4s(*rs) == order4


@pytest.mark.parametrize("r", range(0, 11))
@pytest.mark.parametrize("s", range(1, 11))
def test_order_counts_sum_to_group_order(r, s):
    assert 1 + count_order2_z2r4s(r, s) + count_order4_z2r4s(r, s) == 2 ** (r + 2 * s)


@pytest.mark.parametrize(
    "alpha,rs,expected", [((0, 2), (1, 1), True), ((1, 0), (1, 1), False), ((2,), (0, 1), True)]
)
def test_order2_lies_in_cyclic4(alpha, rs, expected):
    assert order2_lies_in_cyclic4(alpha, *rs) is expected


def test_order2_predicate_rejects_other_orders():
    with pytest.raises(GroupError):
        order2_lies_in_cyclic4((0, 1), 1, 1)
    with pytest.raises(GroupError):
        degree_order2_closed((0, 0), 1, 1)


@pytest.mark.parametrize(
    "alpha,rs,expected", [((1, 2), (1, 1), 1), ((0, 2), (1, 1), 5), ((0, 0, 2), (2, 1), 9)]
)
def test_degree_order2_closed(alpha, rs, expected):
    assert degree_order2_closed(alpha, *rs) == expected


@pytest.mark.parametrize("rs,expected", [((1, 1), (2, 1)), ((0, 2), (0, 3)), ((2, 1), (6, 1))])
def test_degree_class_counts(rs, expected):
    counts = degree_class_counts_z2r4s(*rs)
    assert counts == expected
    assert sum(counts) == count_order2_z2r4s(*rs)


def test_rs_parameters():
    assert rs_parameters(group_z2r4s(2, 1)) == (2, 1)
    assert rs_parameters(group_z2r4s(0, 3)) == (0, 3)
    assert rs_parameters(group_zpmn(3, 1, 2)) is None
    assert rs_parameters(make_group([4, 2])) is None


def test_closed_form_paths():
    assert [label for label, _ in closed_form_paths(group_zpmn(2, 2, 2))] == [
        "closed_form:zpmn",
        "closed_form:z2r4s",
    ]
    assert [label for label, _ in closed_form_paths(group_z2r4s(1, 1))] == ["closed_form:z2r4s"]
    assert closed_form_paths(make_group([6])) == []


def test_group_orders_contained():
    assert not group_orders_contained(make_group([8]), S({0: 1, 8: 7}))
    assert group_orders_contained(group_z2r4s(1, 1), laplacian_spectrum_z2r4s(1, 1))
