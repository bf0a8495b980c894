import pytest

from qtflows.errors import InvalidNetflowError, NotThresholdError
from qtflows.graph import (
    FlowNetwork,
    Multigraph,
    ThresholdGraph,
    all_connected,
    complete,
    conjugate_degrees,
    downward_closed,
    from_binary,
    from_degree_sequence,
    inflate,
    relabel_netflow,
    shifted_shape,
    spanning_tree_count,
    spanning_tree_count_product,
)


def test_binary_sequence_gives_reverse_degree_sequence(g43221):
    assert g43221.degrees == (4, 3, 2, 2, 1)
    assert g43221.n_plus_one == 5


def test_small_graphs():
    assert from_binary((1,)).degrees == (1, 1)
    assert complete(2).degrees == (2, 2, 2)
    assert complete(4).bar_d == (1, 2, 3, 4)
    assert complete(1).edges() == [(1, 0)]


@pytest.mark.parametrize("n", range(1, 6))
def test_all_ones_is_complete(n):
    g = from_binary((1,) * n)
    assert g.is_complete()
    assert g.degrees == (n,) * (n + 1)


def test_invalid_beta():
    with pytest.raises(ValueError):
        ThresholdGraph((1, 2))
    with pytest.raises(ValueError):
        ThresholdGraph(())


def test_conjugate_degrees_and_tree_counts(k4, g43221):
    assert conjugate_degrees(k4) == (4, 4, 4)
    assert spanning_tree_count(k4) == 16
    assert conjugate_degrees(g43221) == (5, 4, 2, 1)
    assert spanning_tree_count(g43221) == 8
    single = from_binary((1,))
    assert conjugate_degrees(single) == (2,)
    assert spanning_tree_count(single) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_tree_count_product_forms_agree(n):
    for g in all_connected(n):
        assert spanning_tree_count(g) == spanning_tree_count_product(g)


def test_inflate(k3):
    m = inflate(k3, (2, 3))
    assert m.multiplicity(1, 0) == 2
    assert m.multiplicity(2, 0) == 3
    assert m.multiplicity(2, 1) == 3
    assert all(inflate(k3, (1, 1)).multiplicity(u, v) == 1 for u, v in [(0, 1), (0, 2), (1, 2)])
    assert inflate(from_binary((1,)), (5,)).multiplicity(0, 1) == 5
    with pytest.raises(InvalidNetflowError):
        inflate(k3, (1,))


def test_from_degree_sequence(g43221):
    assert from_degree_sequence((4, 3, 2, 2, 1)).beta == (1, 0, 1, 0)
    assert from_degree_sequence((1, 2, 2, 3, 4)) == g43221
    with pytest.raises(NotThresholdError):
        from_degree_sequence((2, 2, 1, 1))


@pytest.mark.parametrize("n", range(1, 7))
def test_degree_sequence_round_trip(n):
    for g in all_connected(n):
        assert from_degree_sequence(g.degrees) == g


def test_relabel_netflow(g43221):
    assert g43221.relabeling == (0, 4, 1, 2, 3)
    assert relabel_netflow(g43221, (10, 20, 30, 40)) == (20, 30, 40, 10)


@pytest.mark.parametrize("n", range(1, 7))
def test_relabeling_keeps_outdegree_multiset(n):
    for g in all_connected(n):
        assert sorted(g.beta_network().outdegrees()) == sorted(g.bar_d)


@pytest.mark.parametrize("n", range(1, 6))
def test_canonical_labels_are_downward_closed(n):
    assert all(downward_closed(g) for g in all_connected(n))


def test_all_connected_count():
    graphs = all_connected(4)
    assert len(graphs) == 8
    assert all(g.is_connected() for g in graphs)


def test_shifted_shape(k4):
    assert shifted_shape(k4) == (2, 1)
    assert shifted_shape(from_binary((1, 0, 0))) == ()


def test_flow_network_without_edges(k5_minus_edge):
    assert not k5_minus_edge.has_edge(2, 1)
    assert len(k5_minus_edge.edges()) == 9
    assert not k5_minus_edge.is_complete()
    with pytest.raises(ValueError):
        k5_minus_edge.without_edges([(2, 1)])


def test_flow_network_rows():
    net = FlowNetwork.from_edges(2, [(0, 1), (2, 0)])
    assert net.out == ((), (0,), (0,))
    assert net.outdegrees() == (1, 1)
    assert net.degrees() == (2, 1, 1)
    assert net.neighbors(0) == [1, 2]


def test_multigraph_from_pairs():
    m = Multigraph.from_pairs(3, [(0, 1), (1, 0), (1, 2), (2, 2)])
    assert m.multiplicity(0, 1) == 2
    assert m.loops == 1
    assert m.edge_count() == 4


def test_edge_positions_are_cached(k5_minus_edge):
    index = k5_minus_edge.edge_index
    assert index is k5_minus_edge.edge_index
    assert list(index) == k5_minus_edge.edges()
    assert (2, 1) not in index
