"""Checkers for the closed forms of the weighted Ehrhart function.

Each check compares pipelines that share no code past the polynomial
engine: the flow recursion, spanning-tree sums, the Tutte recursion and
product formulas read off the degree sequence.
"""
from __future__ import annotations

import logging
from functools import lru_cache, partial
from math import comb, prod
from typing import List, Optional

import sympy

from ..flow import ehrhart_qt
from ..graph import (
    ThresholdGraph,
    inflate,
    spanning_tree_count,
    spanning_tree_count_product,
)
from ..models import FailureRecord, VerificationReport
from ..parking import ParkingMethod, codeg, enumerate_parking_functions, maximal_parking_functions
from ..poly import ONE, Q, T, QTPolynomial, Specialization, q_bracket, q_factorial, q_power, specialize
from ..settings import Settings
from ..tree import enumerate_spanning_trees, increasing_tree_sum, increasing_trees, inversion_enumerator, tree_weight
from ..tutte import TutteSolver
from .runner import Instance, compare, default_settings, graph_instances, netflow_instances, run_checks

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4)
def _solver(max_vertices: int, max_relabelings: int) -> TutteSolver:
    # shared by the checks of one sweep; verify_t1 and verify_merino clear it when they finish
    return TutteSolver(max_vertices, max_relabelings)


def _tutte_at_one_q(graph: ThresholdGraph, a, limits) -> QTPolynomial:
    return _solver(*limits)(inflate(graph, a)).substitute(q=1, t=Q)


# -- t = 1 ------------------------------------------------------------------


def check_t1(instance: Instance, limits=(10, 5040)) -> List[FailureRecord]:
    graph, a = instance.graph(), instance.a
    ehr = specialize(ehrhart_qt(graph, a), Specialization.T_ONE).to_polynomial()
    found = []
    tree_sum = sum((tree_weight(tree, a) for tree in enumerate_spanning_trees(graph)), QTPolynomial())
    found += compare(instance, ehr, tree_sum, "Ehr(q,1) = sum of tree weights")
    found += compare(instance, ehr, _tutte_at_one_q(graph, a, limits), "Ehr(q,1) = Tutte(1,q) of inflation")
    found += compare(instance, ehr, increasing_tree_sum(graph, a), "Ehr(q,1) = increasing-tree product sum")
    if all(x == 1 for x in a):
        found += compare(instance, ehr, inversion_enumerator(graph, "trees"), "Ehr(q,1) = I_G(q)")
        found += compare(
            instance,
            inversion_enumerator(graph, "trees"),
            inversion_enumerator(graph, "increasing"),
            "I_G(q) over all trees = I_G(q) over increasing trees",
        )
    return found


def _plan(n_max: int, a_max: int, settings: Optional[Settings], exhaustive: bool, seed: Optional[int]):
    settings = settings or default_settings(n_max)
    seed = settings.seed if seed is None else seed
    return settings, seed, netflow_instances(n_max, a_max, settings, exhaustive, seed)


def verify_t1(
    n_max: int,
    a_max: int = 1,
    settings: Optional[Settings] = None,
    exhaustive: bool = False,
    seed: Optional[int] = None,
) -> VerificationReport:
    settings, seed, instances = _plan(n_max, a_max, settings, exhaustive, seed)
    limits = (settings.tutte_max_vertices, settings.tutte_max_relabelings)
    try:
        return run_checks("t1", instances, partial(check_t1, limits=limits), settings.workers, seed)
    finally:
        _solver.cache_clear()


# -- t = 0 ------------------------------------------------------------------


def t0_product(graph: ThresholdGraph, a) -> QTPolynomial:
    """prod q^(bar d_i (a_i - 1)) [bar d_i]_q."""
    return prod(
        (q_power(d * (x - 1)) * q_bracket(d) for d, x in zip(graph.bar_d, a)),
        start=ONE,
    )


def t0_complete(n: int, a) -> QTPolynomial:
    """q^(a_1 + 2 a_2 + ... + n a_n - C(n+1, 2)) [n]_q!."""
    return q_power(sum(i * x for i, x in enumerate(a, start=1)) - comb(n + 1, 2)) * q_factorial(n)


def check_t0(instance: Instance) -> List[FailureRecord]:
    graph, a = instance.graph(), instance.a
    ehr = specialize(ehrhart_qt(graph, a), Specialization.T_ZERO).to_polynomial()
    found = compare(instance, ehr, t0_product(graph, a), "Ehr(q,0) = product over bar d")
    if graph.is_complete():
        found += compare(instance, ehr, t0_complete(graph.n, a), "Ehr(q,0) of K_{n+1} = q^s [n]_q!")
    return found


def verify_t0(
    n_max: int,
    a_max: int = 1,
    settings: Optional[Settings] = None,
    exhaustive: bool = False,
    seed: Optional[int] = None,
) -> VerificationReport:
    settings, seed, instances = _plan(n_max, a_max, settings, exhaustive, seed)
    return run_checks("t0", instances, check_t0, settings.workers, seed)


# -- t = 1/q ----------------------------------------------------------------


def qinv_shift(graph: ThresholdGraph, a) -> int:
    """F = sum bar d_i a_i - n."""
    return sum(d * x for d, x in zip(graph.bar_d, a)) - graph.n


def qinv_factor(graph: ThresholdGraph, a, i: int) -> QTPolynomial:
    """b_i(q), split by how the degree d_i compares with i."""
    d, x = graph.degrees[i], a[i - 1]
    if d > i:
        return q_bracket((i + 1) * x + sum(a[j - 1] for j in range(i + 1, d + 1)))
    if d == i:
        return q_bracket(x, i + 1)
    return q_bracket(x, d + 1) * q_bracket(d)


def qinv_complete(n: int, a) -> QTPolynomial:
    """[a_n]_{q^(n+1)} prod_{i<n} [(i+1) a_i + sum_{j>i} a_j]_q."""
    head = q_bracket(a[n - 1], n + 1)
    return head * prod((q_bracket((i + 1) * a[i - 1] + sum(a[i:])) for i in range(1, n)), start=ONE)


def check_qinv(instance: Instance) -> List[FailureRecord]:
    graph, a = instance.graph(), instance.a
    n = graph.n
    shifted = specialize(ehrhart_qt(graph, a), Specialization.T_QINV).shift(qinv_shift(graph, a))
    rhs = prod((qinv_factor(graph, a, i) for i in range(1, n + 1)), start=ONE)
    found = compare(instance, shifted, rhs, "q^F Ehr(q,1/q) = prod b_i")
    if graph.is_complete():
        found += compare(instance, shifted, qinv_complete(n, a), "q^F Ehr(q,1/q) of K_{n+1}")
        if all(x == 1 for x in a):
            found += compare(instance, shifted, q_bracket(n + 1) ** (n - 1), "q^C(n,2) Ehr(q,1/q) = [n+1]^(n-1)")
    return found


def verify_qinv(
    n_max: int,
    a_max: int = 1,
    settings: Optional[Settings] = None,
    exhaustive: bool = False,
    seed: Optional[int] = None,
) -> VerificationReport:
    settings, seed, instances = _plan(n_max, a_max, settings, exhaustive, seed)
    return run_checks("qinv", instances, check_qinv, settings.workers, seed)


# -- q = t = 1 --------------------------------------------------------------


def weighted_laplacian_minor(graph: ThresholdGraph, a) -> int:
    """Determinant of the reduced Laplacian with weight a_max(i,j) on edge (i, j)."""
    size = graph.n_plus_one
    lap = sympy.zeros(size, size)
    for i, j in graph.edges():
        w = a[max(i, j) - 1]
        lap[i, j] -= w
        lap[j, i] -= w
        lap[i, i] += w
        lap[j, j] += w
    return int(lap[1:, 1:].det())


def matrix_tree_complete(n: int, a) -> int:
    """a_n prod_{i<n} ((i+1) a_i + sum_{j>i} a_j)."""
    return a[n - 1] * prod((i + 1) * a[i - 1] + sum(a[i:]) for i in range(1, n))


def check_matrix_tree(instance: Instance) -> List[FailureRecord]:
    graph, a = instance.graph(), instance.a
    value = ehrhart_qt(graph, a).evaluate(1, 1)
    found = compare(instance, value, weighted_laplacian_minor(graph, a), "Ehr(1,1) = weighted Laplacian minor")
    if graph.is_complete():
        found += compare(instance, value, matrix_tree_complete(graph.n, a), "Ehr(1,1) of K_{n+1} product")
    return found


def verify_matrix_tree(
    n_max: int,
    a_max: int = 1,
    settings: Optional[Settings] = None,
    exhaustive: bool = False,
    seed: Optional[int] = None,
) -> VerificationReport:
    settings, seed, instances = _plan(n_max, a_max, settings, exhaustive, seed)
    return run_checks("matrix-tree", instances, check_matrix_tree, settings.workers, seed)


# -- counts -----------------------------------------------------------------


def check_spanning_counts(instance: Instance) -> List[FailureRecord]:
    graph = instance.graph()
    trees = sum(1 for _ in enumerate_spanning_trees(graph))
    method = ParkingMethod.SUBSETS if graph.n <= 4 else ParkingMethod.BURNING
    parking = sum(1 for _ in enumerate_parking_functions(graph, method))
    found = compare(instance, trees, parking, "#trees = #parking functions")
    found += compare(instance, trees, spanning_tree_count(graph), "#trees = c_2 ... c_n")
    found += compare(instance, trees, spanning_tree_count_product(graph), "#trees = degree product form")
    found += compare(instance, trees, ehrhart_qt(graph, instance.a).evaluate(1, 1), "#trees = Ehr(1,1)")
    increasing = sum(1 for _ in increasing_trees(graph))
    found += compare(instance, increasing, prod(graph.bar_d), "#increasing trees = prod bar d")
    found += compare(instance, increasing, len(maximal_parking_functions(graph)), "#increasing = #maximal parking")
    found += compare(instance, increasing, ehrhart_qt(graph, instance.a).evaluate(1, 0), "#increasing = Ehr(1,0)")
    return found


def verify_spanning_counts(n_max: int, settings: Optional[Settings] = None) -> VerificationReport:
    settings = settings or default_settings(n_max)
    return run_checks("counts", graph_instances(n_max), check_spanning_counts, settings.workers)


def check_merino(instance: Instance, limits=(10, 5040)) -> List[FailureRecord]:
    graph = instance.graph()
    lhs = _solver(*limits)(inflate(graph, instance.a)).substitute(q=1)
    rhs = sum((T ** codeg(P) for P in enumerate_parking_functions(graph, ParkingMethod.BURNING)), QTPolynomial())
    return compare(instance, lhs, rhs, "Tutte(1,y) = sum y^codeg")


def verify_merino(n_max: int, settings: Optional[Settings] = None) -> VerificationReport:
    settings = settings or default_settings(n_max)
    limits = (settings.tutte_max_vertices, settings.tutte_max_relabelings)
    try:
        return run_checks("merino", graph_instances(n_max), partial(check_merino, limits=limits), settings.workers)
    finally:
        _solver.cache_clear()
