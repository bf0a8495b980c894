import pytest

from qtflows.graph import complete, from_binary
from qtflows.models import FailureRecord, VerificationReport
from qtflows.poly import Q, q_bracket, q_power
from qtflows.settings import Settings
from qtflows.verify import (
    Instance,
    reproduce_negatives,
    scan_conjectures,
    verify_catalan,
    verify_lemma_q,
    verify_lemma_t0,
    verify_matrix_tree,
    verify_merino,
    verify_pmaj,
    verify_qinv,
    verify_spanning_counts,
    verify_t0,
    verify_t1,
)
from qtflows.verify.conjectures import catalan, check_positivity, s_qt
from qtflows.verify.lemmas import lemma_q_sides, simplex_sum
from qtflows.verify.runner import compare, graph_instances, netflow_instances, run_checks
from qtflows.verify.theorems import (
    matrix_tree_complete,
    qinv_complete,
    t0_complete,
    t0_product,
    weighted_laplacian_minor,
)


@pytest.fixture
def small():
    return Settings(profile="test", n_max=4, samples=12, sample_n_max=4)


def test_t1(small):
    report = verify_t1(4, a_max=3, settings=small)
    assert report.ok, report.failures
    assert report.instances >= 15
    assert report.seed == 2024


def test_t1_on_every_graph_up_to_six():
    report = verify_t1(6)
    assert report.ok, report.failures
    assert report.instances == 2**6 - 1


@pytest.mark.slow
def test_t1_on_random_netflows():
    settings = Settings(profile="test", n_max=5, a_max=3, samples=50, sample_n_max=5)
    report = verify_t1(5, a_max=3, settings=settings)
    assert report.ok, report.failures
    assert report.instances == 31 + 50


def test_t1_exhaustive(small):
    report = verify_t1(3, a_max=2, settings=small, exhaustive=True)
    assert report.ok, report.failures
    # 7 graphs with n <= 3, every a in {1, 2}^n
    assert report.instances == 2 * 1 + 2 * 4 + 4 * 8


def test_t0(small):
    assert verify_t0(5, a_max=3, settings=small).ok


def test_qinv(small):
    assert verify_qinv(5, a_max=3, settings=small).ok


def test_matrix_tree(small):
    assert verify_matrix_tree(4, a_max=3, settings=small).ok


def test_complete_graph_closed_forms():
    assert t0_complete(3, (1, 1, 1)) == q_bracket(1) * q_bracket(2) * q_bracket(3)
    assert t0_product(complete(3), (1, 1, 1)) == t0_complete(3, (1, 1, 1))
    assert qinv_complete(3, (1, 1, 1)) == q_bracket(4) ** 2
    assert matrix_tree_complete(3, (1, 1, 1)) == 16
    assert weighted_laplacian_minor(complete(3), (1, 1, 1)) == 16
    assert weighted_laplacian_minor(complete(2), (2, 3)) == matrix_tree_complete(2, (2, 3))


def test_t0_single_edge():
    assert t0_product(from_binary((1,)), (4,)) == q_power(3)


def test_simplex_sum():
    assert simplex_sum(3, 2) == q_power(3) * q_bracket(3)
    for c in range(1, 5):
        assert simplex_sum(1, c) == q_power(c - 1)
    for k in range(1, 5):
        assert simplex_sum(k, 1) == q_bracket(k)


def test_lemmas():
    assert verify_lemma_t0(6, 6).ok
    report = verify_lemma_q(4, 4, 4)
    assert report.ok
    assert report.instances == 4 * 4 * 5


@pytest.mark.parametrize("a, d, z", [(1, 2, 3), (2, 2, 1), (3, 1, 2), (2, 3, 0)])
def test_bracket_identity_examples(a, d, z):
    lhs, rhs = lemma_q_sides(a, d, z)
    assert lhs == rhs


def test_unit_case_of_bracket_identity():
    d, z = 3, 2
    lhs, rhs = lemma_q_sides(1, d, z)
    assert lhs == q_bracket(d) * q_bracket(z + 1)
    assert rhs == Q * q_bracket(d - 1) * q_bracket(z) + q_bracket(z + d)


def test_counts_and_merino():
    assert verify_spanning_counts(5).ok
    assert verify_merino(5).ok


def test_catalan():
    report = verify_catalan(6)
    assert report.ok
    assert report.instances == 6
    assert [catalan(n) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]


def test_pmaj():
    report = verify_pmaj(6)
    assert report.ok, report.failures
    assert report.instances == 6


@pytest.mark.parametrize("which", ["positivity", "complete_minus_g", "poset_covers"])
def test_scans(which):
    report = scan_conjectures(which, 6)
    assert report.ok, report.failures
    assert report.theorem == which
    assert report.instances > 0


@pytest.mark.slow
@pytest.mark.parametrize("which", ["positivity", "complete_minus_g", "poset_covers"])
def test_scans_at_nightly_scale(which):
    assert scan_conjectures(which, 7).ok


def test_scan_accepts_command_line_names():
    assert scan_conjectures("k-minus-g", 3).theorem == "complete_minus_g"
    assert scan_conjectures("poset", 3).theorem == "poset_covers"


def test_published_negatives():
    report = reproduce_negatives()
    assert report.ok, report.failures
    assert report.instances == 5
    assert report.theorem == "negatives"


def test_refinement_negative_term():
    from qtflows.graph import from_degree_sequence
    from qtflows.poset import poset

    g = from_degree_sequence((6, 6, 6, 6, 5, 5, 4))
    assert s_qt(poset(g.n), g).coefficient(2, 2) == -1


def test_failures_are_recorded():
    inst = Instance((1, 1), (1, 1))
    found = compare(inst, Q, Q + 1, "demo")
    assert found == [FailureRecord(beta=[1, 1], a=[1, 1], lhs="q", rhs="q + 1", check="demo")]
    report = run_checks("demo", [inst], lambda i: compare(i, 1, 2, "always"))
    assert not report.ok
    assert report.passed == 0
    assert report.public_dict()["failures"][0]["lhs"] == "1"


def test_positivity_check_passes_on_complete_graphs():
    assert check_positivity(Instance((1, 1, 1), (1, 1, 1))) == []


def test_report_merge_is_associative():
    a = VerificationReport(theorem="x", instances=1, passed=1, elapsed_ms=3)
    b = VerificationReport(theorem="x", instances=2, passed=1, elapsed_ms=4,
                           failures=[FailureRecord(beta=[1], a=[1], lhs="1", rhs="2")])
    c = VerificationReport(theorem="x", instances=3, passed=3, elapsed_ms=5, seed=7)
    left, right = a.merge(b).merge(c), a.merge(b.merge(c))
    assert left == right
    assert left.instances == 6
    assert left.seed == 7
    assert not left.ok


def test_public_report_shape():
    report = VerificationReport(theorem="t1", instances=2, passed=2, elapsed_ms=9, seed=1)
    assert set(report.public_dict()) == {"theorem", "instances", "failures", "elapsed_ms", "seed"}


def test_instance_planning_is_seeded(small):
    first = netflow_instances(4, 3, small, seed=11)
    second = netflow_instances(4, 3, small, seed=11)
    assert first == second
    assert set(graph_instances(4)) <= set(first)
    assert all(inst.beta[0] == 1 for inst in first)


def test_random_samples_are_distinct_and_not_all_ones():
    settings = Settings(profile="test", n_max=5, a_max=3, samples=50, sample_n_max=5)
    planned = netflow_instances(5, 3, settings)
    sampled = [inst for inst in planned if any(x > 1 for x in inst.a)]
    assert len(sampled) == 50
    assert len(planned) == len(graph_instances(5)) + 50


def test_sampling_stops_when_the_range_is_exhausted():
    settings = Settings(profile="test", n_max=1, samples=50)
    assert netflow_instances(1, 2, settings) == [Instance((1,), (1,)), Instance((1,), (2,))]


def test_tutte_memo_is_released_after_a_sweep():
    from qtflows.verify.theorems import _solver

    assert verify_merino(3).ok
    assert _solver.cache_info().currsize == 0
    assert verify_t1(3).ok
    assert _solver.cache_info().currsize == 0
