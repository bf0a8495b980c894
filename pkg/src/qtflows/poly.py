"""Exact sparse polynomials in q and t, Laurent polynomials in q, and q-analogues.

Coefficients are Python ints, so nothing overflows. Values never change after
construction and zero coefficients are never stored.
"""
from __future__ import annotations

import operator
import re
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterator, Mapping, Tuple, Union

from .errors import LaurentError, PolynomialSyntaxError

Exponent = Tuple[int, int]
Scalar = Union[int, "QTPolynomial"]

_TERM = re.compile(
    r"(?P<sign>[+-]?)"
    r"(?P<coeff>\d+)?"
    r"(?:\*?(?P<q>q)(?:\^(?P<eq>-?\d+))?)?"
    r"(?:\*?(?P<t>t)(?:\^(?P<et>-?\d+))?)?"
)


def _scan_terms(text: str) -> Iterator[Tuple[int, int, int]]:
    """Yield (coefficient, e_q, e_t) for every term of the text grammar."""
    body = text.replace(" ", "")
    if not body:
        raise PolynomialSyntaxError("empty polynomial text")
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        if m is None or m.end() == pos or not (m["coeff"] or m["q"] or m["t"]):
            raise PolynomialSyntaxError(f"cannot parse {text!r} at offset {pos}")
        if pos > 0 and not m["sign"]:
            raise PolynomialSyntaxError(f"missing sign before term at offset {pos} in {text!r}")
        coeff = int(m["coeff"]) if m["coeff"] else 1
        if m["coeff"] and (m["q"] or m["t"]) and "*" not in body[m.start("coeff"):m.end()]:
            raise PolynomialSyntaxError(f"expected '*' after coefficient in {text!r}")
        if m["sign"] == "-":
            coeff = -coeff
        eq = (int(m["eq"]) if m["eq"] else 1) if m["q"] else 0
        et = (int(m["et"]) if m["et"] else 1) if m["t"] else 0
        yield coeff, eq, et
        pos = m.end()


def _monomial(eq: int, et: int) -> str:
    parts = []
    if eq:
        parts.append("q" if eq == 1 else f"q^{eq}")
    if et:
        parts.append("t" if et == 1 else f"t^{et}")
    return "*".join(parts)


def _render(terms: Iterator[Tuple[int, str]]) -> str:
    pieces = []
    for coeff, mono in terms:
        size = abs(coeff)
        if not mono:
            body = str(size)
        elif size == 1:
            body = mono
        else:
            body = f"{size}*{mono}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append((" + " if coeff > 0 else " - ") + body)
    return "".join(pieces) or "0"


class QTPolynomial:
    """Sparse bivariate polynomial sum c * q^e_q * t^e_t with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None) -> None:
        clean: Dict[Exponent, int] = {}
        for (eq, et), coeff in (terms or {}).items():
            if eq < 0 or et < 0:
                raise ValueError(f"negative exponent ({eq}, {et}) in QTPolynomial")
            if coeff:
                clean[(int(eq), int(et))] = int(coeff)
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: Dict[Exponent, int]) -> "QTPolynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: int) -> "QTPolynomial":
        return cls._wrap({(0, 0): value} if value else {})

    @classmethod
    def monomial(cls, eq: int = 0, et: int = 0, coeff: int = 1) -> "QTPolynomial":
        return cls({(eq, et): coeff})

    @classmethod
    def coerce(cls, value: Scalar) -> "QTPolynomial":
        if isinstance(value, QTPolynomial):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a QTPolynomial")

    @classmethod
    def parse(cls, text: str) -> "QTPolynomial":
        """Inverse of ``str``; accepts the canonical grammar with any term order."""
        terms: Dict[Exponent, int] = {}
        for coeff, eq, et in _scan_terms(text):
            if eq < 0 or et < 0:
                raise PolynomialSyntaxError(f"negative exponent in polynomial {text!r}")
            terms[(eq, et)] = terms.get((eq, et), 0) + coeff
        return cls(terms)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[Tuple[Exponent, int]]:
        """Terms in canonical order: total degree descending, then e_q descending."""
        return sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def coefficient(self, eq: int, et: int = 0) -> int:
        return self._terms.get((eq, et), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((eq + et for eq, et in self._terms), default=-1)

    def swap(self) -> "QTPolynomial":
        return QTPolynomial._wrap({(et, eq): c for (eq, et), c in self._terms.items()})

    def is_symmetric(self) -> bool:
        return all(self._terms.get((et, eq)) == c for (eq, et), c in self._terms.items())

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def uses_t(self) -> bool:
        return any(et for _, et in self._terms)

    def evaluate(self, q: int, t: int) -> int:
        return sum(c * q**eq * t**et for (eq, et), c in self._terms.items())

    def substitute(self, q: Scalar | None = None, t: Scalar | None = None) -> "QTPolynomial":
        """Replace q and/or t by integers or polynomials; an omitted slot stays itself."""
        q_val = Q if q is None else QTPolynomial.coerce(q)
        t_val = T if t is None else QTPolynomial.coerce(t)
        q_pows: Dict[int, QTPolynomial] = {0: ONE}
        t_pows: Dict[int, QTPolynomial] = {0: ONE}

        def power(cache: Dict[int, QTPolynomial], base: QTPolynomial, k: int) -> QTPolynomial:
            if k not in cache:
                cache[k] = power(cache, base, k - 1) * base
            return cache[k]

        total = ZERO
        for (eq, et), c in self._terms.items():
            total = total + power(q_pows, q_val, eq) * power(t_pows, t_val, et) * c
        return total

    def to_laurent(self) -> "QLaurent":
        if self.uses_t():
            raise ValueError("polynomial involves t; specialize it first")
        return QLaurent._wrap({eq: c for (eq, _), c in self._terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Scalar) -> "QTPolynomial":
        if isinstance(other, int):
            other = QTPolynomial.constant(other)
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            value = out.get(key, 0) + c
            if value:
                out[key] = value
            else:
                out.pop(key, None)
        return QTPolynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "QTPolynomial":
        return QTPolynomial._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "QTPolynomial":
        if isinstance(other, int):
            other = QTPolynomial.constant(other)
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "QTPolynomial":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "QTPolynomial":
        if isinstance(other, int):
            if not other:
                return ZERO
            return QTPolynomial._wrap({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        out: Dict[Exponent, int] = {}
        for (aq, at), ac in self._terms.items():
            for (bq, bt), bc in other._terms.items():
                key = (aq + bq, at + bt)
                out[key] = out.get(key, 0) + ac * bc
        return QTPolynomial._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QTPolynomial":
        if exponent < 0:
            raise ValueError("QTPolynomial has no inverses; use QLaurent for q^-k")
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QTPolynomial.constant(other)
        if isinstance(other, QLaurent):
            return not self.uses_t() and self.to_laurent() == other
        if not isinstance(other, QTPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __reduce__(self):
        return (QTPolynomial, (self._terms,))

    def __str__(self) -> str:
        return _render((c, _monomial(eq, et)) for (eq, et), c in self.items())

    def __repr__(self) -> str:
        return f"QTPolynomial({str(self)!r})"


class QLaurent:
    """Sparse Laurent polynomial in q (exponents may be negative)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None) -> None:
        self._terms = {int(e): int(c) for e, c in (terms or {}).items() if c}
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: Dict[int, int]) -> "QLaurent":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: int) -> "QLaurent":
        return cls._wrap({0: value} if value else {})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "QLaurent":
        return cls({exponent: coeff})

    @classmethod
    def parse(cls, text: str) -> "QLaurent":
        terms: Dict[int, int] = {}
        for coeff, eq, et in _scan_terms(text):
            if et:
                raise PolynomialSyntaxError(f"Laurent polynomial text may not use t: {text!r}")
            terms[eq] = terms.get(eq, 0) + coeff
        return cls(terms)

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> list[Tuple[int, int]]:
        return sorted(self._terms.items(), key=lambda kv: -kv[0])

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def min_exponent(self) -> int:
        return min(self._terms, default=0)

    def shift(self, k: int) -> "QLaurent":
        """Multiply by q^k."""
        return QLaurent._wrap({e + k: c for e, c in self._terms.items()})

    def is_polynomial(self) -> bool:
        return self.min_exponent() >= 0

    def to_polynomial(self) -> QTPolynomial:
        if not self.is_polynomial():
            raise LaurentError(f"{self} has negative exponents")
        return QTPolynomial._wrap({(e, 0): c for e, c in self._terms.items()})

    def evaluate(self, q: int) -> int:
        """Integer value at q; negative powers are only allowed at q = 1 or q = -1."""
        if not self.is_polynomial() and q not in (1, -1):
            raise LaurentError(f"cannot evaluate {self} at q = {q} without division")
        return sum(c * q ** abs(e) if e < 0 else c * q**e for e, c in self._terms.items())

    def __add__(self, other: Union[int, "QLaurent"]) -> "QLaurent":
        if isinstance(other, int):
            other = QLaurent.constant(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            value = out.get(e, 0) + c
            if value:
                out[e] = value
            else:
                out.pop(e, None)
        return QLaurent._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "QLaurent":
        return QLaurent._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union[int, "QLaurent"]) -> "QLaurent":
        if isinstance(other, int):
            other = QLaurent.constant(other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union[int, "QLaurent"]) -> "QLaurent":
        return (-self) + other

    def __mul__(self, other: Union[int, "QLaurent"]) -> "QLaurent":
        if isinstance(other, int):
            if not other:
                return QLaurent()
            return QLaurent._wrap({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, QLaurent):
            return NotImplemented
        out: Dict[int, int] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                out[ea + eb] = out.get(ea + eb, 0) + ca * cb
        return QLaurent._wrap({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QLaurent":
        if exponent < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return QLaurent({-e * -exponent: c ** (-exponent)})
        result, base = QLaurent.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QLaurent.constant(other)
        if isinstance(other, QTPolynomial):
            return other == self
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __reduce__(self):
        return (QLaurent, (self._terms,))

    def __str__(self) -> str:
        return _render((c, "" if e == 0 else ("q" if e == 1 else f"q^{e}")) for e, c in self.items())

    def __repr__(self) -> str:
        return f"QLaurent({str(self)!r})"


ZERO = QTPolynomial()
ONE = QTPolynomial.constant(1)
Q = QTPolynomial.monomial(1, 0)
T = QTPolynomial.monomial(0, 1)
# -(1-t)(1-q), the factor paid once per nonzero entry beyond the first n
NEG_KAPPA = -((1 - T) * (1 - Q))


class Specialization(str, Enum):
    T_ONE = "t_one"
    T_ZERO = "t_zero"
    T_QINV = "t_qinv"

    @classmethod
    def _missing_(cls, value):
        # short spellings used on the command line
        return {"t1": cls.T_ONE, "t0": cls.T_ZERO, "tqinv": cls.T_QINV}.get(value)


_OPS: Dict[str, Callable] = {"add": operator.add, "sub": operator.sub, "mul": operator.mul}


def arith(lhs, rhs, op: str):
    """Ring operation by name; works for QTPolynomial and QLaurent alike."""
    try:
        return _OPS[op](lhs, rhs)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; expected one of {sorted(_OPS)}") from None


@lru_cache(maxsize=None)
def qt_weight(b: int) -> QTPolynomial:
    """(q^b - t^b)/(q - t) for b > 0, and 1 for b = 0."""
    if b < 0:
        raise ValueError("qt_weight needs b >= 0")
    if b == 0:
        return ONE
    return QTPolynomial._wrap({(i, b - 1 - i): 1 for i in range(b)})


@lru_cache(maxsize=None)
def q_bracket(k: int, base: int = 1) -> QTPolynomial:
    """[k]_{q^base} = 1 + q^base + ... + q^{(k-1) base}."""
    if k < 0 or base < 1:
        raise ValueError("q_bracket needs k >= 0 and base >= 1")
    return QTPolynomial._wrap({(i * base, 0): 1 for i in range(k)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QTPolynomial:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    return ONE if n == 0 else q_factorial(n - 1) * q_bracket(n)


def q_power(k: int) -> QTPolynomial:
    return QTPolynomial.monomial(k, 0)


def t_bracket(k: int) -> QTPolynomial:
    """[k]_t, the bracket written in the t slot."""
    return q_bracket(k).swap()


def specialize(p: QTPolynomial, mode: Union[Specialization, str]) -> QLaurent:
    """Substitute t := 1, t := 0 or t := q^-1 term by term."""
    mode = Specialization(mode)
    out: Dict[int, int] = {}
    for (eq, et), c in p._terms.items():
        if mode is Specialization.T_ONE:
            e = eq
        elif mode is Specialization.T_ZERO:
            if et:
                continue
            e = eq
        else:
            e = eq - et
        out[e] = out.get(e, 0) + c
    return QLaurent({e: c for e, c in out.items() if c})


def check_flags(p: QTPolynomial) -> Tuple[bool, bool]:
    """(symmetric in q and t, every coefficient positive)."""
    return p.is_symmetric(), p.is_nonnegative()
