"""Threshold graphs, flow networks and inflated multigraphs.

Vertices are 0..n with 0 the sink. Edges are directed i -> j whenever i > j.
A threshold graph is stored by its binary sequence beta; everything else
(degrees, outdegrees, the canonical relabeling) is derived.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InvalidNetflowError, NotThresholdError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class FlowNetwork:
    """DAG on 0..n; ``out[i]`` lists the targets j < i of vertex i in increasing order."""

    n: int
    out: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.out) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} adjacency rows, got {len(self.out)}")
        for i, targets in enumerate(self.out):
            if any(not 0 <= j < i for j in targets) or list(targets) != sorted(set(targets)):
                raise ValueError(f"vertex {i} has invalid out-neighbors {targets}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "FlowNetwork":
        rows: List[set] = [set() for _ in range(n + 1)]
        for u, v in edges:
            hi, lo = max(u, v), min(u, v)
            if hi == lo or hi > n or lo < 0:
                raise ValueError(f"edge ({u}, {v}) is not valid on vertices 0..{n}")
            rows[hi].add(lo)
        return cls(n, tuple(tuple(sorted(r)) for r in rows))

    @classmethod
    def complete(cls, n: int) -> "FlowNetwork":
        return cls(n, tuple(tuple(range(i)) for i in range(n + 1)))

    def without_edges(self, edges: Iterable[Edge]) -> "FlowNetwork":
        drop = {(max(u, v), min(u, v)) for u, v in edges}
        missing = drop - set(self.edges())
        if missing:
            raise ValueError(f"edges {sorted(missing)} are not in the network")
        return FlowNetwork.from_edges(self.n, (e for e in self.edges() if e not in drop))

    def edges(self) -> List[Edge]:
        """Directed edges (i, j), i > j, ordered by i then j."""
        return [(i, j) for i in range(self.n + 1) for j in self.out[i]]

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        """Position of each edge in ``edges()``."""
        return {e: k for k, e in enumerate(self.edges())}

    def has_edge(self, i: int, j: int) -> bool:
        hi, lo = max(i, j), min(i, j)
        return hi <= self.n and lo in self.out[hi]

    def is_complete(self) -> bool:
        return all(len(self.out[i]) == i for i in range(self.n + 1))

    def outdegrees(self) -> Tuple[int, ...]:
        return tuple(len(self.out[i]) for i in range(1, self.n + 1))

    def degrees(self) -> Tuple[int, ...]:
        deg = [len(targets) for targets in self.out]
        for i, targets in enumerate(self.out):
            for j in targets:
                deg[j] += 1
        return tuple(deg)

    def neighbors(self, i: int) -> List[int]:
        upper = [k for k in range(i + 1, self.n + 1) if i in self.out[k]]
        return list(self.out[i]) + upper


@dataclass(frozen=True)
class ThresholdGraph:
    """Threshold graph on n + 1 vertices given by beta = (beta_0, ..., beta_{n-1}).

    In beta labels vertex i < n is joined to every j > i when beta_i = 1.
    Canonical labels sort vertices by decreasing degree (stable in the beta
    label); ``relabeling[old] = new``.
    """

    beta: Tuple[int, ...]
    _edges: Tuple[Edge, ...] = field(init=False, repr=False, compare=False)
    degrees: Tuple[int, ...] = field(init=False, compare=False)
    relabeling: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.beta or any(b not in (0, 1) for b in self.beta):
            raise ValueError(f"beta must be a nonempty 0/1 sequence, got {self.beta!r}")
        n = len(self.beta)
        raw = [(j, i) for i in range(n) if self.beta[i] for j in range(i + 1, n + 1)]
        raw_deg = [0] * (n + 1)
        for u, v in raw:
            raw_deg[u] += 1
            raw_deg[v] += 1
        order = sorted(range(n + 1), key=lambda v: (-raw_deg[v], v))
        relabel = [0] * (n + 1)
        for new, old in enumerate(order):
            relabel[old] = new
        edges = sorted(
            (max(relabel[u], relabel[v]), min(relabel[u], relabel[v])) for u, v in raw
        )
        object.__setattr__(self, "_edges", tuple(edges))
        object.__setattr__(self, "degrees", tuple(raw_deg[old] for old in order))
        object.__setattr__(self, "relabeling", tuple(relabel))

    @property
    def n(self) -> int:
        return len(self.beta)

    @property
    def n_plus_one(self) -> int:
        return len(self.beta) + 1

    @cached_property
    def bar_d(self) -> Tuple[int, ...]:
        """Outdegrees (bar d_1, ..., bar d_n) in canonical labels."""
        return self.network().outdegrees()

    def network(self) -> FlowNetwork:
        return FlowNetwork.from_edges(self.n, self._edges)

    def beta_network(self) -> FlowNetwork:
        """The same graph in its beta labels, edges still oriented high to low."""
        inverse = {new: old for old, new in enumerate(self.relabeling)}
        return FlowNetwork.from_edges(self.n, ((inverse[i], inverse[j]) for i, j in self._edges))

    def edges(self) -> List[Edge]:
        return list(self._edges)

    def edge_count(self) -> int:
        return len(self._edges)

    def adjacent(self, i: int, j: int) -> bool:
        return self.network().has_edge(i, j)

    def neighbors(self, i: int) -> List[int]:
        return self.network().neighbors(i)

    def is_connected(self) -> bool:
        return self.beta[0] == 1

    def is_complete(self) -> bool:
        return all(self.beta)

    def to_dict(self) -> Dict[str, List[int]]:
        return {"beta": list(self.beta), "degrees": list(self.degrees), "bar_d": list(self.bar_d)}

    def label(self) -> str:
        return "".join(map(str, self.beta))


def from_binary(beta: Sequence[int]) -> ThresholdGraph:
    return ThresholdGraph(tuple(int(b) for b in beta))


def complete(n: int) -> ThresholdGraph:
    if n < 1:
        raise ValueError("complete(n) needs n >= 1")
    return ThresholdGraph((1,) * n)


def from_degree_sequence(degrees: Sequence[int]) -> ThresholdGraph:
    """Rebuild beta by peeling a dominating or an isolated vertex at each step."""
    remaining = sorted((int(d) for d in degrees), reverse=True)
    if len(remaining) < 2:
        raise NotThresholdError("a threshold graph here needs at least two vertices")
    target = list(remaining)
    beta: List[int] = []
    while len(remaining) > 1:
        m = len(remaining) - 1
        if remaining[0] == m:
            beta.append(1)
            remaining = [d - 1 for d in remaining[1:]]
        elif remaining[-1] == 0:
            beta.append(0)
            remaining = remaining[:-1]
        else:
            raise NotThresholdError(f"degree sequence {tuple(degrees)} is not threshold")
    if remaining != [0]:
        raise NotThresholdError(f"degree sequence {tuple(degrees)} is not threshold")
    graph = ThresholdGraph(tuple(beta))
    if list(graph.degrees) != target:
        raise NotThresholdError(f"degree sequence {tuple(degrees)} is not threshold")
    return graph


def all_connected(n: int) -> List[ThresholdGraph]:
    """Every connected threshold graph on n + 1 vertices, beta ascending."""
    out = []
    for mask in range(2 ** (n - 1)):
        rest = tuple((mask >> (n - 2 - k)) & 1 for k in range(n - 1))
        out.append(ThresholdGraph((1,) + rest))
    return out


def conjugate_degrees(graph: ThresholdGraph) -> Tuple[int, ...]:
    """c_i = #{j : d_j >= i} for i = 1..n."""
    return tuple(sum(1 for d in graph.degrees if d >= i) for i in range(1, graph.n + 1))


def spanning_tree_count(graph: ThresholdGraph) -> int:
    return prod(conjugate_degrees(graph)[1:])


def spanning_tree_count_product(graph: ThresholdGraph) -> int:
    """Second product form: prod over i < d_i of (d_i + 1) times prod over d_i < i of d_i."""
    total = 1
    for i in range(1, graph.n + 1):
        d = graph.degrees[i]
        if i < d:
            total *= d + 1
        elif d < i:
            total *= d
    return total


def relabel_netflow(graph: ThresholdGraph, a: Sequence[int]) -> Tuple[int, ...]:
    """Move a netflow written in beta labels to canonical labels."""
    if len(a) != graph.n:
        raise InvalidNetflowError(f"netflow has {len(a)} entries, graph needs {graph.n}")
    if graph.relabeling[0] != 0:
        raise InvalidNetflowError("the sink must stay at vertex 0; graph is disconnected")
    out = [0] * graph.n
    for old in range(1, graph.n + 1):
        out[graph.relabeling[old] - 1] = a[old - 1]
    return tuple(out)


def shifted_shape(graph: ThresholdGraph) -> Tuple[int, ...]:
    """Shifted diagram of the edges beyond the star: row j counts i > j with bar d_i > j."""
    bar = graph.bar_d
    rows = [sum(1 for i in range(j + 1, graph.n + 1) if bar[i - 1] > j) for j in range(1, graph.n)]
    return tuple(r for r in rows if r)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; ``edges`` maps (u, v) with u < v to a positive multiplicity."""

    vertex_count: int
    edges: Tuple[Tuple[int, int, int], ...] = ()
    loops: int = 0

    def __post_init__(self) -> None:
        for u, v, m in self.edges:
            if not (0 <= u < v < self.vertex_count) or m < 1:
                raise ValueError(f"bad multigraph edge ({u}, {v}) x{m}")
        if self.loops < 0:
            raise ValueError("loop count must be nonnegative")

    @classmethod
    def from_pairs(cls, vertex_count: int, pairs: Iterable[Edge], loops: int = 0) -> "Multigraph":
        table: Dict[Edge, int] = {}
        for u, v in pairs:
            if u == v:
                loops += 1
                continue
            key = (min(u, v), max(u, v))
            table[key] = table.get(key, 0) + 1
        return cls(vertex_count, tuple((u, v, m) for (u, v), m in sorted(table.items())), loops)

    def multiplicity(self, u: int, v: int) -> int:
        lo, hi = min(u, v), max(u, v)
        return next((m for a, b, m in self.edges if (a, b) == (lo, hi)), 0)

    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges) + self.loops

    def expanded_edges(self) -> List[Edge]:
        """Every parallel copy listed separately; loops are not included."""
        return [(u, v) for u, v, m in self.edges for _ in range(m)]


def inflate(graph: ThresholdGraph, a: Sequence[int]) -> Multigraph:
    """Replace edge (i, j) by a_{max(i, j)} parallel edges."""
    if len(a) != graph.n:
        raise InvalidNetflowError(f"netflow has {len(a)} entries, graph needs {graph.n}")
    if any(x < 1 for x in a):
        raise InvalidNetflowError(f"netflow entries must be positive, got {tuple(a)}")
    edges = tuple(sorted((j, i, a[i - 1]) for i, j in graph.edges()))
    return Multigraph(graph.n_plus_one, edges)


def downward_closed(graph: ThresholdGraph) -> bool:
    """Adjacency of i > j forces adjacency of every i' <= i, j' <= j with i' != j'."""
    net = graph.network()
    for i, j in net.edges():
        for ip in range(i + 1):
            for jp in range(j + 1):
                if ip != jp and not net.has_edge(ip, jp):
                    return False
    return True
