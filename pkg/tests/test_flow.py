from itertools import product
from math import comb, prod

import pytest

from qtflows.errors import InvalidNetflowError, SupportTooSmallError
from qtflows.flow import (
    Engine,
    GNVariant,
    IntegerFlow,
    count_flows,
    ehrhart_qt,
    enumerate_flows,
    flow_to_tesler,
    gn_sum,
    gn_weight,
    netflow,
    ones,
    tesler_count,
    tesler_matrices,
    weak_compositions,
    weight_qt,
)
from qtflows.graph import FlowNetwork, all_connected, complete, from_degree_sequence, spanning_tree_count
from qtflows.poly import NEG_KAPPA, ONE, Q, T, QTPolynomial, check_flags, q_factorial, qt_weight, specialize
from qtflows.verify.conjectures import GN_3322, K5_MINUS_EDGE, K5_MINUS_EDGE_AT_ONE


def _support(flow):
    return {e: x for e, x in flow.as_dict().items() if x}


def test_weak_compositions_order():
    assert list(weak_compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert list(weak_compositions(0, 3)) == [(0, 0, 0)]
    assert list(weak_compositions(1, 0)) == []


def test_triangle_flows(k3):
    flows = list(enumerate_flows(k3, (1, 1)))
    assert [_support(f) for f in flows] == [
        {(1, 0): 1, (2, 0): 1},
        {(1, 0): 2, (2, 1): 1},
    ]
    assert all(f.conserves() for f in flows)
    assert weight_qt(flows[0]) == ONE
    assert weight_qt(flows[1]) == Q + T


def test_triangle_ehrhart(k3):
    value = ehrhart_qt(k3, (1, 1))
    assert value == 1 + Q + T
    assert str(value) == "q + t + 1"


def test_extra_support_costs_one_factor(k4):
    checked = 0
    for flow in enumerate_flows(k4, (1, 1, 1)):
        if flow.nonzero_count() == 4:
            expected = NEG_KAPPA * prod((qt_weight(x) for x in flow.amounts), start=ONE)
            assert weight_qt(flow) == expected
            checked += 1
    assert checked


def test_small_support_is_rejected(k3):
    flow = IntegerFlow(k3.network(), (1, 1), (0, 2, 0))
    with pytest.raises(SupportTooSmallError):
        weight_qt(flow)


def test_netflow_validation(k3):
    with pytest.raises(InvalidNetflowError):
        ehrhart_qt(k3, (1,))
    with pytest.raises(InvalidNetflowError):
        ehrhart_qt(k3, (0, 1))
    assert netflow((2, 3), 2).sink() == -5


def test_k5_minus_edge_golden(k5_minus_edge):
    assert count_flows(k5_minus_edge, ones(4)) == 15
    assert ehrhart_qt(k5_minus_edge, ones(4)) == QTPolynomial.parse(K5_MINUS_EDGE)
    assert ehrhart_qt(k5_minus_edge, ones(4)).evaluate(1, 1) == K5_MINUS_EDGE_AT_ONE == 37


def _value_at_one_by_flows(host, a):
    # q = t = 1 kills the extra-support factor and turns qt_weight(b) into b
    return sum(
        prod(x for x in flow.amounts if x)
        for flow in enumerate_flows(host, a)
        if flow.nonzero_count() == len(a)
    )


@pytest.mark.parametrize("dropped", [(i, j) for i in range(2, 5) for j in range(i)])
def test_value_at_one_is_never_negative(dropped):
    host = FlowNetwork.complete(4).without_edges([dropped])
    for a in [(1, 1, 1, 1), (2, 1, 3, 1)]:
        value = ehrhart_qt(host, a).evaluate(1, 1)
        assert value >= 0
        assert value == _value_at_one_by_flows(host, a)


@pytest.mark.parametrize("n", range(1, 5))
def test_value_at_one_matches_flow_products_on_threshold_graphs(n):
    for g in all_connected(n):
        a = tuple(range(1, n + 1))
        assert ehrhart_qt(g, a).evaluate(1, 1) == _value_at_one_by_flows(g, a) >= 1


def test_large_netflow_negative(g3322):
    assert count_flows(g3322, (3, 3, 3)) == 16
    assert ehrhart_qt(g3322, (3, 3, 3)).coefficient(3, 3) == -1


@pytest.mark.parametrize("n", range(1, 5))
def test_ehrhart_at_one_counts_spanning_trees(n):
    for g in all_connected(n):
        assert ehrhart_qt(g, ones(n)).evaluate(1, 1) == spanning_tree_count(g)


@pytest.mark.parametrize(
    "degrees, a",
    [((2, 2, 2), (2, 1)), ((3, 3, 3, 3), (1, 2, 1)), ((4, 3, 2, 2, 1), (1, 1, 2, 1)), ((3, 3, 2, 2), (2, 2, 1))],
)
def test_engines_agree(degrees, a):
    g = from_degree_sequence(degrees)
    assert ehrhart_qt(g, a, Engine.RECURSIVE) == ehrhart_qt(g, a, "enumerate")
    assert count_flows(g, a) == sum(1 for _ in enumerate_flows(g, a))


def test_workers_give_the_same_sum():
    g = complete(4)
    assert ehrhart_qt(g, (1, 2, 1, 2), workers=2) == ehrhart_qt(g, (1, 2, 1, 2))


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 7), (4, 40), (5, 357)])
def test_tesler_numbers(n, expected):
    assert tesler_count(n) == expected
    assert count_flows(complete(n), ones(n)) == expected


def test_flow_to_tesler_on_triangle(k3):
    first, second = list(enumerate_flows(k3, (1, 1)))
    assert flow_to_tesler(first).rows == ((1, 0), (0, 1))
    assert flow_to_tesler(second).rows == ((0, 1), (0, 2))
    assert flow_to_tesler(second).row_major() == "0 1 0 2"


@pytest.mark.parametrize("a", [(1, 1, 1), (1, 2, 3), (2, 1, 2), (1, 1, 1, 1)])
def test_flows_and_tesler_matrices_are_in_bijection(a):
    n = len(a)
    images = [flow_to_tesler(f) for f in enumerate_flows(complete(n), a)]
    assert len(set(images)) == len(images)
    assert set(images) == set(tesler_matrices(tuple(reversed(a))))
    assert all(m.hooks() == tuple(reversed(a)) for m in images)


def test_missing_beta_column_is_zero_above_diagonal():
    g = from_degree_sequence((4, 3, 2, 2, 1))
    for flow in enumerate_flows(g, ones(4)):
        m = flow_to_tesler(flow)
        n = m.n
        for r in range(n):
            for c in range(r + 1, n):
                if not g.network().has_edge(n - r, n - c):
                    assert m.rows[r][c] == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_gorsky_negut_catalan(n):
    assert gn_sum(complete(n), ones(n)).evaluate(1, 1) == comb(2 * n, n) // (n + 1)


def test_gorsky_negut_on_3322(g3322):
    assert gn_sum(g3322, ones(3), GNVariant.GN) == QTPolynomial.parse(GN_3322)
    total = sum((gn_weight(f, "gn") for f in enumerate_flows(g3322, ones(3))), QTPolynomial())
    assert total == QTPolynomial.parse(GN_3322)


def test_gorsky_negut_small_complete():
    assert gn_sum(complete(1), (1,)) == ONE
    assert gn_sum(complete(2), (1, 1)) == Q + T


def test_threshold_variant_accepts_dashed_name(g3322):
    assert GNVariant("gn-threshold") is GNVariant.GN_THRESHOLD
    assert gn_sum(g3322, ones(3), "gn-threshold") == gn_sum(g3322, ones(3), GNVariant.GN_THRESHOLD)


def test_threshold_variant_negative_term():
    g = from_degree_sequence((5, 5, 5, 3, 3, 3))
    assert count_flows(g, ones(5)) == 81
    assert gn_sum(g, ones(5), GNVariant.GN_THRESHOLD).coefficient(2, 2) == -1


def test_network_host_is_accepted(k3):
    assert ehrhart_qt(FlowNetwork.complete(2), (1, 1)) == ehrhart_qt(k3, (1, 1))


def test_edge_lookup_matches_edge_order(k5_minus_edge):
    for flow in enumerate_flows(k5_minus_edge, (1, 2, 1, 1)):
        assert {e: flow.f(*e) for e in k5_minus_edge.edges()} == flow.as_dict()
        assert flow.f(2, 1) == 0
        assert flow.f(1, 2) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graph_dimension_and_t_zero(n):
    ehr = ehrhart_qt(complete(n), ones(n))
    assert ehr.evaluate(1, 1) == (n + 1) ** (n - 1)
    assert specialize(ehr, "t_zero") == q_factorial(n)
    if n <= 5:
        assert check_flags(ehr) == (True, True)


@pytest.mark.parametrize("n", range(1, 4))
def test_ehrhart_is_symmetric(n):
    for g in all_connected(n):
        for a in product(range(1, 4), repeat=n):
            assert ehrhart_qt(g, a).is_symmetric()


@pytest.mark.parametrize("n", range(1, 6))
def test_every_flow_conserves(n):
    netflows = [(1,) * n] + ([tuple(range(1, n + 1))] if n <= 4 else [])
    for g in all_connected(n):
        for a in netflows:
            for flow in enumerate_flows(g, a):
                assert flow.conserves()
                assert flow.nonzero_count() >= n
