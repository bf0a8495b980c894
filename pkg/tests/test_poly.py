import pickle

import numpy as np
import pytest

from qtflows.errors import LaurentError, PolynomialSyntaxError
from qtflows.poly import (
    ONE,
    Q,
    T,
    ZERO,
    QLaurent,
    QTPolynomial,
    Specialization,
    arith,
    check_flags,
    q_bracket,
    q_factorial,
    qt_weight,
    specialize,
)
from qtflows.verify.conjectures import K5_MINUS_EDGE


def test_addition_cancels():
    total = QTPolynomial.parse("q + t") + QTPolynomial.parse("q - t")
    assert total == 2 * Q
    assert str(total) == "2*q"


def test_multiplication_by_zero():
    assert (Q + T) * 0 == ZERO
    assert str(ZERO) == "0"


def test_distributivity_and_render_order():
    product = (1 + Q) * (1 + T)
    assert product == QTPolynomial.parse("1 + q + t + q*t")
    assert str(product) == "q*t + q + t + 1"


def test_arith_by_name():
    assert arith(Q, T, "add") == Q + T
    assert arith(Q, T, "mul") == Q * T
    with pytest.raises(ValueError):
        arith(Q, T, "div")


@pytest.mark.parametrize("b, expected", [(0, "1"), (1, "1"), (3, "q^2 + q*t + t^2")])
def test_qt_weight(b, expected):
    assert str(qt_weight(b)) == expected


def test_q_bracket():
    assert q_bracket(3) == 1 + Q + Q**2
    assert q_bracket(2, 3) == 1 + Q**3
    assert q_bracket(1, 5) == ONE


def test_q_factorial():
    assert q_factorial(0) == ONE
    assert q_factorial(2) == 1 + Q
    assert str(q_factorial(3)) == "q^3 + 2*q^2 + 2*q + 1"


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("n", range(1, 7))
def test_bracket_of_product(k, n):
    assert q_bracket(k * n) == q_bracket(n, k) * q_bracket(k)


def test_specializations_of_weight_three():
    w = qt_weight(3)
    assert specialize(w, Specialization.T_ONE) == QLaurent({2: 1, 1: 1, 0: 1})
    assert specialize(w, "t_zero") == QLaurent({2: 1})
    qinv = specialize(w, "tqinv")
    assert str(qinv) == "q^2 + 1 + q^-2"
    assert qinv.evaluate(1) == 3


def test_laurent_needs_nonnegative_exponents_for_polynomials():
    qinv = QLaurent.parse("q^2 + 1 + q^-2")
    assert not qinv.is_polynomial()
    with pytest.raises(LaurentError):
        qinv.to_polynomial()
    with pytest.raises(LaurentError):
        qinv.evaluate(2)
    assert qinv.shift(2).to_polynomial() == Q**4 + Q**2 + 1


def test_flags():
    assert check_flags(Q + T) == (True, True)
    assert check_flags(Q - T) == (False, False)
    assert check_flags(QTPolynomial.parse(K5_MINUS_EDGE)) == (True, False)


def test_parse_round_trip_keeps_canonical_text():
    assert str(QTPolynomial.parse(K5_MINUS_EDGE)) == K5_MINUS_EDGE


def test_parse_accepts_any_term_order():
    assert QTPolynomial.parse("1 - t^2 + 3*q*t") == QTPolynomial.parse("3*q*t - t^2 + 1")


@pytest.mark.parametrize("text", ["", "q +", "2q", "q^-1", "x"])
def test_parse_rejects_bad_text(text):
    with pytest.raises(PolynomialSyntaxError):
        QTPolynomial.parse(text)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        QTPolynomial({(-1, 0): 1})


def test_substitute():
    p = Q * T + Q
    assert p.substitute(q=1) == T + 1
    assert (Q + T).substitute(t=Q) == 2 * Q
    assert p.evaluate(2, 3) == 8


def test_swap_and_symmetry():
    p = Q**2 + 2 * T
    assert p.swap() == T**2 + 2 * Q
    assert not p.is_symmetric()
    assert (p + p.swap()).is_symmetric()


def test_values_are_hashable_and_picklable():
    p = QTPolynomial.parse(K5_MINUS_EDGE)
    assert pickle.loads(pickle.dumps(p)) == p
    assert len({p, QTPolynomial.parse(K5_MINUS_EDGE)}) == 1
    assert QLaurent.parse("q^-1 + 2") == QLaurent({-1: 1, 0: 2})


def _random_polynomial(rng):
    terms = {}
    for _ in range(int(rng.integers(0, 6))):
        key = (int(rng.integers(0, 4)), int(rng.integers(0, 4)))
        terms[key] = terms.get(key, 0) + int(rng.integers(-5, 6))
    return QTPolynomial({k: c for k, c in terms.items() if c})


@pytest.mark.parametrize("seed", range(25))
def test_ring_axioms(seed):
    rng = np.random.default_rng(seed)
    p, r, s = (_random_polynomial(rng) for _ in range(3))
    assert p + r == r + p
    assert p * r == r * p
    assert (p + r) + s == p + (r + s)
    assert (p * r) * s == p * (r * s)
    assert p * (r + s) == p * r + p * s
    assert p + ZERO == p
    assert p * ONE == p
    assert p - p == ZERO
    assert (p - r) + r == p


@pytest.mark.parametrize("seed", range(25))
def test_t_qinv_is_a_ring_homomorphism(seed):
    rng = np.random.default_rng(seed)
    p, r = _random_polynomial(rng), _random_polynomial(rng)
    qinv = Specialization.T_QINV
    assert specialize(p * r, qinv) == specialize(p, qinv) * specialize(r, qinv)
    assert specialize(p + r, qinv) == specialize(p, qinv) + specialize(r, qinv)


def test_qt_weight_is_symmetric_and_specializes_to_brackets():
    for b in range(1, 51):
        w = qt_weight(b)
        assert w.is_symmetric()
        assert specialize(w, Specialization.T_ONE) == q_bracket(b)
    assert qt_weight(0).is_symmetric()
