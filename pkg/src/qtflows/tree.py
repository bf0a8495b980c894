"""Spanning trees rooted at 0, inversions and the inversion enumerator."""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple, Union

from .flow import Host, IntegerFlow, NetflowVector, as_network, netflow
from .graph import FlowNetwork
from .poly import ONE, ZERO, QTPolynomial, q_bracket, q_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpanningTree:
    """``parent[i]`` is the tree parent of vertex i; ``parent[0]`` is -1."""

    network: FlowNetwork
    parent: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parent) - 1

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, self.parent[i]) for i in range(1, len(self.parent))]

    @cached_property
    def _children(self) -> Dict[int, List[int]]:
        kids: Dict[int, List[int]] = {v: [] for v in range(len(self.parent))}
        for i in range(1, len(self.parent)):
            kids[self.parent[i]].append(i)
        return kids

    def descendants(self, i: int) -> FrozenSet[int]:
        """Vertices below i in the tree, i itself included."""
        seen, stack = {i}, [i]
        while stack:
            for c in self._children[stack.pop()]:
                seen.add(c)
                stack.append(c)
        return frozenset(seen)

    def is_increasing(self) -> bool:
        return all(self.parent[i] < i for i in range(1, len(self.parent)))


def enumerate_spanning_trees(host: Host) -> Iterator[SpanningTree]:
    """Every spanning tree once, ordered lexicographically by parent array."""
    network = as_network(host)
    n = network.n
    choices = [sorted(network.neighbors(i)) for i in range(n + 1)]
    parent = [-1] * (n + 1)

    def closes_cycle(i: int, p: int) -> bool:
        v = p
        while v != 0 and v < i:
            v = parent[v]
        return v == i

    def assign(i: int) -> Iterator[SpanningTree]:
        if i > n:
            yield SpanningTree(network, tuple(parent))
            return
        for p in choices[i]:
            if closes_cycle(i, p):
                continue
            parent[i] = p
            yield from assign(i + 1)
        parent[i] = -1

    return assign(1)


def increasing_trees(host: Host) -> Iterator[SpanningTree]:
    """Trees with parent(i) < i; there are prod(bar d_i) of them."""
    network = as_network(host)
    for choice in product(*(network.out[i] for i in range(1, network.n + 1))):
        yield SpanningTree(network, (-1,) + tuple(choice))


def inversions(tree: SpanningTree) -> List[Tuple[int, int]]:
    """Pairs (i, j), i > j, with j a proper descendant of i."""
    return [
        (i, j)
        for i in range(1, tree.n + 1)
        for j in sorted(tree.descendants(i))
        if j < i
    ]


def inv(tree: SpanningTree) -> int:
    return len(inversions(tree))


def kappa(tree: SpanningTree) -> int:
    """Inversions (i, j) where j is adjacent to the parent of i in the host."""
    return sum(1 for i, j in inversions(tree) if tree.network.has_edge(j, tree.parent[i]))


def delta(tree: SpanningTree, i: int) -> int:
    return len(tree.descendants(i))


def delta_a(tree: SpanningTree, i: int, a: Sequence[int]) -> int:
    return sum(a[j - 1] for j in tree.descendants(i))


class InversionMethod(str, Enum):
    TREES = "trees"
    INCREASING = "increasing"


def inversion_enumerator(
    host: Host, method: Union[InversionMethod, str] = InversionMethod.TREES
) -> QTPolynomial:
    """I_G(q): sum of q^inv over all trees, or of prod [delta_T(i)]_q over increasing trees."""
    method = InversionMethod(method)
    total = ZERO
    if method is InversionMethod.TREES:
        for tree in enumerate_spanning_trees(host):
            total = total + q_power(inv(tree))
        return total
    for tree in increasing_trees(host):
        term = ONE
        for i in range(1, tree.n + 1):
            term = term * q_bracket(delta(tree, i))
        total = total + term
    return total


def tree_weight(tree: SpanningTree, a: Union[NetflowVector, Sequence[int]]) -> QTPolynomial:
    """prod over edges of [a_max(i,j)]_q times prod over inversions of q^a_max(p(i), j)."""
    vec = netflow(a, tree.n).a
    weight = ONE
    for i, p in tree.edges():
        weight = weight * q_bracket(vec[max(i, p) - 1])
    shift = sum(vec[max(tree.parent[i], j) - 1] for i, j in inversions(tree))
    return weight * q_power(shift)


def increasing_tree_sum(host: Host, a: Union[NetflowVector, Sequence[int]]) -> QTPolynomial:
    """sum over increasing trees of prod [delta^a_T(i)]_q."""
    network = as_network(host)
    vec = netflow(a, network.n).a
    total = ZERO
    for tree in increasing_trees(network):
        term = ONE
        for i in range(1, network.n + 1):
            term = term * q_bracket(delta_a(tree, i, vec))
        total = total + term
    return total


def flow_on_increasing_tree(tree: SpanningTree, a: Union[NetflowVector, Sequence[int]]) -> IntegerFlow:
    """The unique flow supported on an increasing tree: edge (i, p(i)) carries delta^a_T(i)."""
    if not tree.is_increasing():
        raise ValueError("only increasing trees carry a flow on their own edges")
    vec = netflow(a, tree.n).a
    carried = {(i, tree.parent[i]): delta_a(tree, i, vec) for i in range(1, tree.n + 1)}
    amounts = tuple(carried.get(e, 0) for e in tree.network.edges())
    return IntegerFlow(tree.network, vec, amounts)


def histogram(values: Sequence[int]) -> Dict[int, int]:
    return dict(sorted(Counter(values).items()))
