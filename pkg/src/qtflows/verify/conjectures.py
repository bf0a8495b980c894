"""Positivity scans, the Mobius refinement and the published non-positive examples."""
from __future__ import annotations

import logging
from enum import Enum
from functools import lru_cache, reduce
from math import comb
from typing import Callable, List, Optional, Tuple, Union

from ..flow import GNVariant, count_flows, ehrhart_qt, gn_sum, ones
from ..graph import FlowNetwork, ThresholdGraph, complete, from_binary, from_degree_sequence
from ..models import FailureRecord, VerificationReport
from ..parking import ParkingMethod, codeg, enumerate_parking_functions, maximal_parking_functions, pmaj
from ..poly import Q, T, QTPolynomial, q_factorial
from ..poset import PosetPn, moebius_transform, poset
from ..settings import Settings
from .runner import Instance, compare, default_settings, failure, graph_instances, run_checks

logger = logging.getLogger(__name__)

# Signs are opposite to the commonly printed form of this example. At q = t = 1 a flow
# weighs the product of its entries, or 0 past n nonzero entries, so Ehr(1,1) >= 0;
# this one evaluates to 37.
K5_MINUS_EDGE = (
    "-q^3*t - 2*q^2*t^2 - q*t^3 + 3*q^3 + 5*q^2*t + 5*q*t^2 + 3*t^3"
    " + 5*q^2 + 8*q*t + 5*t^2 + 3*q + 3*t + 1"
)
K5_MINUS_EDGE_AT_ONE = 37
GN_3322 = "q^2 + 2*q*t + t^2 - q^2*t - q*t^2"


@lru_cache(maxsize=None)
def ehrhart_ones(beta: Tuple[int, ...]) -> QTPolynomial:
    graph = from_binary(beta)
    return ehrhart_qt(graph, ones(graph.n))


class Scan(str, Enum):
    POSITIVITY = "positivity"
    COMPLETE_MINUS_G = "complete_minus_g"
    POSET_COVERS = "poset_covers"

    @classmethod
    def _missing_(cls, value):
        return {"k-minus-g": cls.COMPLETE_MINUS_G, "poset": cls.POSET_COVERS}.get(value)


def check_positivity(instance: Instance) -> List[FailureRecord]:
    ehr = ehrhart_ones(instance.beta)
    return [] if ehr.is_nonnegative() else [failure(instance, ehr, "N[q,t]", "Ehr has a negative coefficient")]


def check_complete_minus_g(instance: Instance) -> List[FailureRecord]:
    full = ehrhart_ones((1,) * len(instance.beta))
    diff = full - ehrhart_ones(instance.beta)
    return [] if diff.is_nonnegative() else [failure(instance, full, ehrhart_ones(instance.beta), "Ehr(K) - Ehr(G)")]


def check_cover(instance: Instance) -> List[FailureRecord]:
    upper, lower = ehrhart_ones(instance.beta), ehrhart_ones(instance.other)
    if (upper - lower).is_nonnegative():
        return []
    return [failure(instance, upper, lower, f"Ehr(G) - Ehr(H) for cover {instance.describe()}")]


def scan_conjectures(
    which: Union[Scan, str], n_max: int, settings: Optional[Settings] = None
) -> VerificationReport:
    which = Scan(which)
    settings = settings or default_settings(n_max)
    if which is Scan.POSET_COVERS:
        instances = []
        for n in range(1, n_max + 1):
            for lower, upper in poset(n).cover_pairs():
                instances.append(Instance(upper.beta, (1,) * n, lower.beta))
        return run_checks(which.value, instances, check_cover, settings.workers)
    check = check_positivity if which is Scan.POSITIVITY else check_complete_minus_g
    return run_checks(which.value, graph_instances(n_max), check, settings.workers)


def s_qt(P: PosetPn, G: ThresholdGraph) -> QTPolynomial:
    """sum over H <= G of mu(H, G) Ehr(H)."""
    return moebius_transform(P, G, lambda H: ehrhart_ones(H.beta))


# -- published counterexamples ----------------------------------------------


def _negative_k5_minus_edge(instance: Instance) -> List[FailureRecord]:
    network = FlowNetwork.complete(4).without_edges([(2, 1)])
    found = compare(instance, count_flows(network, instance.a), 15, "K_5 minus edge (2,1): flow count")
    ehr = ehrhart_qt(network, instance.a)
    found += compare(instance, ehr, QTPolynomial.parse(K5_MINUS_EDGE), "K_5 minus edge (2,1)")
    found += compare(instance, ehr.evaluate(1, 1), K5_MINUS_EDGE_AT_ONE, "K_5 minus edge (2,1) at q = t = 1")
    return found


def _negative_large_netflow(instance: Instance) -> List[FailureRecord]:
    graph = instance.graph()
    ehr = ehrhart_qt(graph, instance.a)
    found = compare(instance, count_flows(graph, instance.a), 16, "(3,3,2,2) with a = 3: flow count")
    found += compare(instance, ehr.coefficient(3, 3), -1, "coefficient of q^3*t^3")
    return found


def _negative_gn(instance: Instance) -> List[FailureRecord]:
    value = gn_sum(instance.graph(), instance.a, GNVariant.GN)
    return compare(instance, value, QTPolynomial.parse(GN_3322), "Gorsky-Negut sum on (3,3,2,2)")


def _negative_gn_threshold(instance: Instance) -> List[FailureRecord]:
    graph = instance.graph()
    value = gn_sum(graph, instance.a, GNVariant.GN_THRESHOLD)
    found = compare(instance, count_flows(graph, instance.a), 81, "(5,5,5,3,3,3): flow count")
    found += compare(instance, value.coefficient(2, 2), -1, "threshold Gorsky-Negut: coefficient of q^2*t^2")
    return found


def _negative_mobius(instance: Instance) -> List[FailureRecord]:
    graph = instance.graph()
    value = s_qt(poset(graph.n), graph)
    return compare(instance, value.coefficient(2, 2), -1, "S_qt on (6,6,6,6,5,5,4): coefficient of q^2*t^2")


def reproduce_negatives() -> VerificationReport:
    cases: List[Tuple[Instance, Callable[[Instance], List[FailureRecord]]]] = [
        (Instance((1, 1, 1, 1), (1, 1, 1, 1)), _negative_k5_minus_edge),
        (Instance(from_degree_sequence((3, 3, 2, 2)).beta, (3, 3, 3)), _negative_large_netflow),
        (Instance(from_degree_sequence((3, 3, 2, 2)).beta, (1, 1, 1)), _negative_gn),
        (Instance(from_degree_sequence((5, 5, 5, 3, 3, 3)).beta, (1,) * 5), _negative_gn_threshold),
        (Instance(from_degree_sequence((6, 6, 6, 6, 5, 5, 4)).beta, (1,) * 6), _negative_mobius),
    ]
    reports = [run_checks("negatives", [inst], check) for inst, check in cases]
    return reduce(VerificationReport.merge, reports)


# -- q = t = 1 and t-only statistics ----------------------------------------


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def check_catalan(instance: Instance) -> List[FailureRecord]:
    n = len(instance.beta)
    value = gn_sum(instance.graph(), instance.a, GNVariant.GN).evaluate(1, 1)
    return compare(instance, value, catalan(n), f"C_{n}(1,1)")


def verify_catalan(n_max: int) -> VerificationReport:
    instances = [Instance((1,) * n, (1,) * n) for n in range(1, n_max + 1)]
    return run_checks("catalan", instances, check_catalan)


def check_pmaj(instance: Instance, hilbert_n_max: int = 4) -> List[FailureRecord]:
    n = len(instance.beta)
    network = complete(n).network()
    maximal = maximal_parking_functions(network)
    top = sum((T ** pmaj(P, maximal) for P in maximal), QTPolynomial())
    found = compare(instance, top, q_factorial(n).swap(), "sum over maximal of t^pmaj = [n]_t!")
    if n <= hilbert_n_max:
        joint = sum(
            (Q ** codeg(P) * T ** pmaj(P, maximal) for P in enumerate_parking_functions(network, ParkingMethod.BURNING)),
            QTPolynomial(),
        )
        found += compare(instance, joint, ehrhart_ones(instance.beta), "sum q^codeg t^pmaj = Ehr(K_{n+1})")
    return found


def verify_pmaj(n_max: int) -> VerificationReport:
    instances = [Instance((1,) * n, (1,) * n) for n in range(1, n_max + 1)]
    return run_checks("pmaj", instances, check_pmaj)
