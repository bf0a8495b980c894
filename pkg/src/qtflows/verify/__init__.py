from .conjectures import Scan, reproduce_negatives, s_qt, scan_conjectures, verify_catalan, verify_pmaj
from .lemmas import verify_lemma_q, verify_lemma_t0
from .runner import Instance, run_checks
from .theorems import (
    verify_matrix_tree,
    verify_merino,
    verify_qinv,
    verify_spanning_counts,
    verify_t0,
    verify_t1,
)

__all__ = [
    "Instance",
    "Scan",
    "reproduce_negatives",
    "run_checks",
    "s_qt",
    "scan_conjectures",
    "verify_catalan",
    "verify_lemma_q",
    "verify_lemma_t0",
    "verify_matrix_tree",
    "verify_merino",
    "verify_pmaj",
    "verify_qinv",
    "verify_spanning_counts",
    "verify_t0",
    "verify_t1",
]
