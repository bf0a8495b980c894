"""The two bracket identities behind the t = 0 and t = 1/q product formulas."""
from __future__ import annotations

import logging
from typing import List

from ..flow import weak_compositions
from ..models import FailureRecord, VerificationReport
from ..poly import Q, QLaurent, QTPolynomial, q_bracket, q_power
from .runner import Instance, compare, run_checks

logger = logging.getLogger(__name__)


def simplex_sum(k: int, c: int) -> QTPolynomial:
    """Sum over b_0 + ... + b_{k-1} = c of q^(b_1 + 2 b_2 + ...) (q-1)^(#nonzero - 1) prod q^(b - 1)."""
    total = QTPolynomial()
    for point in weak_compositions(c, k):
        nonzero = [b for b in point if b]
        shift = sum(i * b for i, b in enumerate(point)) + sum(b - 1 for b in nonzero)
        total = total + q_power(shift) * (Q - 1) ** (len(nonzero) - 1)
    return total


def check_lemma_t0(instance: Instance) -> List[FailureRecord]:
    k, c = instance.a
    return compare(instance, simplex_sum(k, c), q_power(k * (c - 1)) * q_bracket(k), f"simplex sum k={k} c={c}")


def verify_lemma_t0(k_max: int = 6, c_max: int = 6) -> VerificationReport:
    instances = [Instance((), (k, c)) for k in range(1, k_max + 1) for c in range(1, c_max + 1)]
    return run_checks("lemma-t0", instances, check_lemma_t0)


def _laurent(p: QTPolynomial) -> QLaurent:
    return p.to_laurent()


def _wt_inv(k: int) -> QLaurent:
    """(q,t)-weight of k at t = 1/q: q^(1-k) [k]_{q^2}."""
    return _laurent(q_bracket(k, 2)).shift(1 - k)


def lemma_q_sides(a: int, d: int, z: int) -> tuple[QTPolynomial, QTPolynomial]:
    """Both sides of the bracket identity, multiplied by the power of q that clears q^-1."""
    lhs = _laurent(q_bracket(a, d + 1) * q_bracket(d) * q_bracket(z + a))
    head = _laurent(q_power(a) * q_bracket(a, d) * q_bracket(d - 1) * q_bracket(z))
    middle = (_wt_inv(a) * _laurent(q_bracket(z + d * a))).shift(a - 1)
    # (1-q)(1-1/q) = 2 - q - 1/q
    kappa = QLaurent({0: 2, 1: -1, -1: -1})
    tail = QLaurent()
    for k in range(1, a):
        tail = tail + _wt_inv(k) * _laurent(q_bracket(a - k, d) * q_bracket(d - 1) * q_bracket(z + d * k))
    rhs = head + middle - (kappa * tail).shift(a)
    clear = max(0, -min(lhs.min_exponent(), rhs.min_exponent()))
    return lhs.shift(clear).to_polynomial(), rhs.shift(clear).to_polynomial()


def check_lemma_q(instance: Instance) -> List[FailureRecord]:
    a, d, z = instance.a
    lhs, rhs = lemma_q_sides(a, d, z)
    return compare(instance, lhs, rhs, f"bracket identity a={a} d={d} z={z}")


def verify_lemma_q(a_max: int = 4, d_max: int = 4, z_max: int = 4) -> VerificationReport:
    instances = [
        Instance((), (a, d, z))
        for a in range(1, a_max + 1)
        for d in range(1, d_max + 1)
        for z in range(0, z_max + 1)
    ]
    return run_checks("lemma-q", instances, check_lemma_q)
