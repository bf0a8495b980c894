"""Instance planning and the shared check loop behind every verifier."""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..graph import ThresholdGraph, all_connected, from_binary
from ..models import FailureRecord, VerificationReport
from ..settings import Settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Instance:
    """One (beta, a) pair; ``other`` carries a second graph for pairwise checks."""

    beta: Tuple[int, ...]
    a: Tuple[int, ...]
    other: Tuple[int, ...] = ()

    def graph(self) -> ThresholdGraph:
        return from_binary(self.beta)

    def other_graph(self) -> ThresholdGraph:
        return from_binary(self.other)

    def describe(self) -> str:
        text = f"beta={''.join(map(str, self.beta))} a={','.join(map(str, self.a))}"
        return text + (f" vs {''.join(map(str, self.other))}" if self.other else "")


Check = Callable[[Instance], List[FailureRecord]]


def default_settings(n_max: int) -> Settings:
    return Settings(profile="default", n_max=n_max)


def failure(instance: Instance, lhs: object, rhs: object, check: str) -> FailureRecord:
    return FailureRecord(beta=list(instance.beta), a=list(instance.a), lhs=str(lhs), rhs=str(rhs), check=check)


def compare(instance: Instance, lhs: object, rhs: object, check: str) -> List[FailureRecord]:
    """Exact equality of canonical forms; one failure record when they differ."""
    return [] if lhs == rhs else [failure(instance, lhs, rhs, check)]


def graph_instances(n_max: int, n_min: int = 1) -> List[Instance]:
    """Every connected threshold graph with n_min <= n <= n_max, all-ones netflow."""
    return [Instance(g.beta, (1,) * g.n) for n in range(n_min, n_max + 1) for g in all_connected(n)]


def netflow_instances(
    n_max: int,
    a_max: int,
    settings: Settings,
    exhaustive: bool = False,
    seed: Optional[int] = None,
) -> List[Instance]:
    """All graphs with a = 1, plus either every small netflow or seeded random ones."""
    planned = set(graph_instances(n_max))
    if a_max > 1:
        if exhaustive:
            top = min(a_max, settings.exhaustive_max_entry)
            for n in range(1, min(n_max, settings.exhaustive_max_n) + 1):
                for g in all_connected(n):
                    for a in product(range(1, top + 1), repeat=n):
                        planned.add(Instance(g.beta, a))
        else:
            rng = np.random.default_rng(settings.seed if seed is None else seed)
            n_top = min(n_max, settings.sample_n_max)
            # every (beta, a) in range with some a_i > 1
            space = sum(2 ** (n - 1) * (a_max**n - 1) for n in range(1, n_top + 1))
            sampled: Set[Instance] = set()
            while len(sampled) < min(settings.samples, space):
                n = int(rng.integers(1, n_top + 1))
                beta = (1,) + tuple(int(b) for b in rng.integers(0, 2, size=n - 1))
                a = tuple(int(x) for x in rng.integers(1, a_max + 1, size=n))
                if any(x > 1 for x in a):
                    sampled.add(Instance(beta, a))
            planned |= sampled
    return sorted(planned, key=lambda inst: (len(inst.beta), inst.beta, inst.a, inst.other))


def run_checks(
    theorem: str,
    instances: Sequence[Instance],
    check: Check,
    workers: int = 1,
    seed: Optional[int] = None,
) -> VerificationReport:
    """Run ``check`` on every instance and fold the outcomes into one report."""
    logger.info("%s: checking %d instances with %d worker(s)", theorem, len(instances), workers)
    start = time.perf_counter()
    outcomes = _map(check, instances, workers)
    failures: List[FailureRecord] = []
    passed = 0
    for instance, found in zip(instances, outcomes):
        if found:
            for record in found:
                logger.warning("%s failed on %s (%s): %s != %s", theorem, instance.describe(), record.check, record.lhs, record.rhs)
            failures.extend(found)
        else:
            passed += 1
            logger.debug("%s passed on %s", theorem, instance.describe())
    elapsed = int((time.perf_counter() - start) * 1000)
    logger.info("%s: %d/%d passed in %d ms", theorem, passed, len(instances), elapsed)
    return VerificationReport(
        theorem=theorem,
        instances=len(instances),
        passed=passed,
        failures=failures,
        elapsed_ms=elapsed,
        seed=seed,
    )


def _map(check: Check, instances: Sequence[Instance], workers: int) -> Iterable[List[FailureRecord]]:
    if workers <= 1 or len(instances) < 2:
        return [check(inst) for inst in instances]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(check, instances, chunksize=max(1, len(instances) // (4 * workers))))
