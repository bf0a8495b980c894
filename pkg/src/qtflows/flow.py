"""Integer points of flow polytopes, their (q,t)-weights and Tesler matrices.

Flows are produced vertex by vertex from n down to 1. At vertex i the amount
a_i plus whatever already arrived from above is split over the out-edges of
i by weak compositions, largest share on the lowest target first.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import prod
from typing import Callable, Dict, Iterator, List, Sequence, Tuple, TypeVar, Union

from pydantic import BaseModel, ConfigDict, PositiveInt, ValidationError

from .errors import InvalidNetflowError, SupportTooSmallError
from .graph import Edge, FlowNetwork, ThresholdGraph
from .poly import NEG_KAPPA, ONE, ZERO, QTPolynomial, qt_weight

logger = logging.getLogger(__name__)

Host = Union[ThresholdGraph, FlowNetwork]
V = TypeVar("V")


class NetflowVector(BaseModel):
    """Netflow (a_1, ..., a_n); vertex 0 absorbs -sum(a)."""

    model_config = ConfigDict(frozen=True)

    a: Tuple[PositiveInt, ...]

    @property
    def n(self) -> int:
        return len(self.a)

    def sink(self) -> int:
        return -sum(self.a)


def netflow(a: Union[NetflowVector, Sequence[int]], n: int) -> NetflowVector:
    """Validate a netflow for a host on n + 1 vertices."""
    if isinstance(a, NetflowVector):
        vec = a
    else:
        try:
            vec = NetflowVector(a=tuple(a))
        except ValidationError as e:
            raise InvalidNetflowError(f"netflow entries must be positive integers, got {tuple(a)}") from e
    if vec.n != n:
        raise InvalidNetflowError(f"netflow has {vec.n} entries, graph needs {n}")
    return vec


def ones(n: int) -> NetflowVector:
    return NetflowVector(a=(1,) * n)


def as_network(host: Host) -> FlowNetwork:
    return host.network() if isinstance(host, ThresholdGraph) else host


@dataclass(frozen=True)
class IntegerFlow:
    """Nonnegative amounts on the edges of ``network``, aligned with ``network.edges()``."""

    network: FlowNetwork
    a: Tuple[int, ...]
    amounts: Tuple[int, ...]

    def f(self, i: int, j: int) -> int:
        k = self.network.edge_index.get((i, j))
        return 0 if k is None else self.amounts[k]

    def as_dict(self) -> Dict[Edge, int]:
        return dict(zip(self.network.edges(), self.amounts))

    def support(self) -> List[Edge]:
        return [e for e, x in zip(self.network.edges(), self.amounts) if x]

    def nonzero_count(self) -> int:
        return sum(1 for x in self.amounts if x)

    def conserves(self) -> bool:
        net = [0] * (self.network.n + 1)
        for (i, j), x in zip(self.network.edges(), self.amounts):
            net[i] += x
            net[j] -= x
        return tuple(net[1:]) == self.a and net[0] == -sum(self.a)


@dataclass(frozen=True)
class TeslerMatrix:
    rows: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def hooks(self) -> Tuple[int, ...]:
        """Row k: b_kk + ... + b_kn - (b_1k + ... + b_{k-1,k})."""
        n = self.n
        return tuple(
            sum(self.rows[k][k:]) - sum(self.rows[i][k] for i in range(k)) for k in range(n)
        )

    def row_major(self) -> str:
        return " ".join(str(x) for row in self.rows for x in row)


def weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` entries, largest first entry first."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in weak_compositions(total - head, parts - 1):
            yield (head,) + tail


def enumerate_flows(host: Host, a: Union[NetflowVector, Sequence[int]]) -> Iterator[IntegerFlow]:
    """Every lattice point of the flow polytope, each once, in the fixed order above."""
    network = as_network(host)
    vec = netflow(a, network.n)
    n = network.n
    edges = network.edges()
    position = {e: k for k, e in enumerate(edges)}
    amounts = [0] * len(edges)
    inflow = [0] * (n + 1)

    def visit(i: int) -> Iterator[IntegerFlow]:
        if i == 0:
            yield IntegerFlow(network, vec.a, tuple(amounts))
            return
        available = vec.a[i - 1] + inflow[i]
        targets = network.out[i]
        for comp in weak_compositions(available, len(targets)):
            for j, x in zip(targets, comp):
                amounts[position[(i, j)]] = x
                inflow[j] += x
            yield from visit(i - 1)
            for j, x in zip(targets, comp):
                inflow[j] -= x
        for j in targets:
            amounts[position[(i, j)]] = 0

    return visit(n)


def weight_qt(flow: IntegerFlow) -> QTPolynomial:
    """(-(1-t)(1-q))^(#nonzero - n) times the product of qt_weight over the entries."""
    extra = flow.nonzero_count() - flow.network.n
    if extra < 0:
        raise SupportTooSmallError(
            f"flow has {flow.nonzero_count()} nonzero entries, fewer than n = {flow.network.n}"
        )
    weight = NEG_KAPPA**extra
    for x in flow.amounts:
        if x > 1:
            weight = weight * qt_weight(x)
    return weight


# -- per-vertex recursion ---------------------------------------------------

VertexWeight = Callable[[int, Tuple[int, ...], Tuple[int, ...]], V]


def _peel(
    network: FlowNetwork,
    i: int,
    amounts: Tuple[int, ...],
    weight: VertexWeight,
    unit: V,
    zero: V,
    memo: Dict[Tuple[int, Tuple[int, ...]], V],
) -> V:
    """Sum over flows of vertices i..1 given the amount each still has to send."""
    if i == 0:
        return unit
    key = (i, amounts)
    if key in memo:
        return memo[key]
    targets = network.out[i]
    total = zero
    for comp in weak_compositions(amounts[i - 1], len(targets)):
        factor = weight(i, targets, comp)
        if not factor:
            continue
        rest = list(amounts[: i - 1])
        for j, x in zip(targets, comp):
            if j:
                rest[j - 1] += x
        total = total + factor * _peel(network, i - 1, tuple(rest), weight, unit, zero, memo)
    memo[key] = total
    return total


def _ehrhart_vertex_weight(i: int, targets: Tuple[int, ...], comp: Tuple[int, ...]) -> QTPolynomial:
    nonzero = [x for x in comp if x]
    return NEG_KAPPA ** (len(nonzero) - 1) * prod((qt_weight(x) for x in nonzero if x > 1), start=ONE)


def _count_vertex_weight(i: int, targets: Tuple[int, ...], comp: Tuple[int, ...]) -> int:
    return 1


def _partial_ehrhart(network: FlowNetwork, a: Tuple[int, ...], top: List[Tuple[int, ...]]) -> QTPolynomial:
    n = network.n
    memo: Dict = {}
    total = ZERO
    for comp in top:
        rest = list(a[: n - 1])
        for j, x in zip(network.out[n], comp):
            if j:
                rest[j - 1] += x
        total = total + _ehrhart_vertex_weight(n, network.out[n], comp) * _peel(
            network, n - 1, tuple(rest), _ehrhart_vertex_weight, ONE, ZERO, memo
        )
    return total


class Engine(str, Enum):
    RECURSIVE = "recursive"
    ENUMERATE = "enumerate"


def ehrhart_qt(
    host: Host,
    a: Union[NetflowVector, Sequence[int]],
    engine: Union[Engine, str] = Engine.RECURSIVE,
    workers: int = 1,
) -> QTPolynomial:
    """Sum of weight_qt over all integer flows of the host with netflow a."""
    network = as_network(host)
    vec = netflow(a, network.n)
    engine = Engine(engine)
    if engine is Engine.ENUMERATE:
        total = ZERO
        for flow in enumerate_flows(network, vec):
            total = total + weight_qt(flow)
        return total
    top = list(weak_compositions(vec.a[-1], len(network.out[network.n])))
    if workers <= 1 or len(top) < 2:
        return _partial_ehrhart(network, vec.a, top)
    chunks = [top[k::workers] for k in range(workers) if top[k::workers]]
    logger.debug("splitting %d top-level compositions over %d workers", len(top), len(chunks))
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = pool.map(_partial_ehrhart, [network] * len(chunks), [vec.a] * len(chunks), chunks)
        return sum(parts, ZERO)


def count_flows(host: Host, a: Union[NetflowVector, Sequence[int]]) -> int:
    network = as_network(host)
    vec = netflow(a, network.n)
    return _peel(network, network.n, vec.a, _count_vertex_weight, 1, 0, {})


# -- Gorsky-Negut weights ---------------------------------------------------


class GNVariant(str, Enum):
    GN = "gn"
    GN_THRESHOLD = "gn_threshold"

    @classmethod
    def _missing_(cls, value):
        return cls.GN_THRESHOLD if value == "gn-threshold" else None


def _gn_vertex_weight(variant: GNVariant) -> VertexWeight:
    def weight(i: int, targets: Tuple[int, ...], comp: Tuple[int, ...]) -> QTPolynomial:
        if i == 1:
            return ONE
        column = i - 1 if variant is GNVariant.GN else max(targets, default=0)
        factor = ONE
        for j, x in zip(targets, comp):
            if x == 0:
                continue
            if j == column:
                factor = factor * (qt_weight(x + 1) - qt_weight(x))
            elif 0 < j < column:
                factor = factor * NEG_KAPPA * qt_weight(x)
        return factor

    return weight


def gn_sum(
    host: Host,
    a: Union[NetflowVector, Sequence[int]],
    variant: Union[GNVariant, str] = GNVariant.GN,
) -> QTPolynomial:
    """Sum of the Gorsky-Negut weight (or its threshold variant) over all flows.

    ``gn`` takes edge (i, i-1) as the distinguished entry of vertex i, reading
    a missing edge as a zero entry. ``gn_threshold`` takes the largest
    out-neighbor of i instead, which may be the sink. Vertex 1 contributes 1.
    """
    network = as_network(host)
    vec = netflow(a, network.n)
    return _peel(network, network.n, vec.a, _gn_vertex_weight(GNVariant(variant)), ONE, ZERO, {})


def gn_weight(flow: IntegerFlow, variant: Union[GNVariant, str] = GNVariant.GN) -> QTPolynomial:
    """Weight of a single flow; the product of the per-vertex factors."""
    weight = _gn_vertex_weight(GNVariant(variant))
    network = flow.network
    values = flow.as_dict()
    total = ONE
    for i in range(1, network.n + 1):
        targets = network.out[i]
        total = total * weight(i, targets, tuple(values[(i, j)] for j in targets))
    return total


# -- Tesler matrices --------------------------------------------------------


def flow_to_tesler(flow: IntegerFlow) -> TeslerMatrix:
    """b_jj = f(n+1-j, 0) and b_ij = f(n+1-i, n+1-j) for i < j; missing edges give 0."""
    n = flow.network.n
    values = flow.as_dict()
    rows = []
    for r in range(n):
        row = [0] * n
        row[r] = values.get((n - r, 0), 0)
        for c in range(r + 1, n):
            row[c] = values.get((n - r, n - c), 0)
        rows.append(tuple(row))
    return TeslerMatrix(tuple(rows))


def tesler_matrices(hooks: Sequence[int]) -> Iterator[TeslerMatrix]:
    """Upper triangular nonnegative matrices whose row k hook equals hooks[k]."""
    n = len(hooks)
    rows: List[Tuple[int, ...]] = []

    def fill(k: int) -> Iterator[TeslerMatrix]:
        if k == n:
            yield TeslerMatrix(tuple(rows))
            return
        available = hooks[k] + sum(row[k] for row in rows)
        if available < 0:
            return
        for comp in weak_compositions(available, n - k):
            rows.append((0,) * k + comp)
            yield from fill(k + 1)
            rows.pop()

    return fill(0)


@lru_cache(maxsize=None)
def tesler_count(n: int) -> int:
    """Number of Tesler matrices with all hooks 1."""
    return sum(1 for _ in tesler_matrices((1,) * n))
