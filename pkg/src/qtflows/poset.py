from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple, TypeVar

import numpy as np

from .errors import IncomparableError
from .graph import ThresholdGraph, all_connected, shifted_shape

logger = logging.getLogger(__name__)

V = TypeVar("V")


def leq_by_shape(small: ThresholdGraph, big: ThresholdGraph) -> bool:
    """Shifted-diagram containment, row by row."""
    lam, mu = shifted_shape(small), shifted_shape(big)
    return len(lam) <= len(mu) and all(x <= y for x, y in zip(lam, mu))


@dataclass(eq=False)
class PosetPn:
    """Connected threshold graphs on n + 1 vertices ordered by edge containment.

    Elements are kept in a linear extension (edge count, then beta), so
    ``leq[i, j]`` implies ``i <= j``.
    """

    n: int
    elements: Tuple[ThresholdGraph, ...]
    leq: np.ndarray
    covers: Tuple[Tuple[int, int], ...]
    _index: Dict[Tuple[int, ...], int] = field(default_factory=dict, repr=False)
    _mu: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {g.beta: k for k, g in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, graph: ThresholdGraph) -> int:
        try:
            return self._index[graph.beta]
        except KeyError:
            raise KeyError(f"{graph.label()} is not an element of P_{self.n}") from None

    def is_leq(self, small: ThresholdGraph, big: ThresholdGraph) -> bool:
        return bool(self.leq[self.index(small), self.index(big)])

    def below(self, graph: ThresholdGraph) -> List[ThresholdGraph]:
        k = self.index(graph)
        return [self.elements[h] for h in np.flatnonzero(self.leq[:, k])]

    def cover_pairs(self) -> List[Tuple[ThresholdGraph, ThresholdGraph]]:
        return [(self.elements[h], self.elements[g]) for h, g in self.covers]

    def minimum(self) -> ThresholdGraph:
        return self.elements[0]

    def maximum(self) -> ThresholdGraph:
        return self.elements[-1]


def poset(n: int) -> PosetPn:
    if n < 1:
        raise ValueError("poset(n) needs n >= 1")
    elements = tuple(sorted(all_connected(n), key=lambda g: (g.edge_count(), g.beta)))
    size = len(elements)
    edge_sets = [frozenset(g.edges()) for g in elements]
    leq = np.zeros((size, size), dtype=bool)
    for i in range(size):
        for j in range(i, size):
            leq[i, j] = edge_sets[i] <= edge_sets[j]
    lt = leq & ~np.eye(size, dtype=bool)
    # j covers i when nothing sits strictly between them
    child = lt & ~((lt.astype(np.int64) @ lt.astype(np.int64)) > 0)
    leq.setflags(write=False)
    covers = tuple((int(i), int(j)) for i, j in zip(*np.nonzero(child)))
    logger.debug("built P_%d with %d elements and %d covers", n, size, len(covers))
    return PosetPn(n, elements, leq, covers)


def moebius(P: PosetPn, H: ThresholdGraph, G: ThresholdGraph) -> int:
    """mu(H, G) with mu(G, G) = 1 and mu(H, G) = -sum over H <= K < G of mu(H, K)."""
    h, g = P.index(H), P.index(G)
    if not P.leq[h, g]:
        raise IncomparableError(f"{H.label()} is not below {G.label()} in P_{P.n}")
    return _mu(P, h, g)


def _mu(P: PosetPn, h: int, g: int) -> int:
    key = (h, g)
    if key not in P._mu:
        if h == g:
            value = 1
        else:
            value = -sum(_mu(P, h, k) for k in range(h, g) if P.leq[h, k] and P.leq[k, g])
        P._mu[key] = value
    return P._mu[key]


def moebius_transform(P: PosetPn, G: ThresholdGraph, f: Callable[[ThresholdGraph], V]) -> V:
    """sum over H <= G of mu(H, G) * f(H)."""
    g = P.index(G)
    total = None
    for h in np.flatnonzero(P.leq[:, g]):
        term = f(P.elements[h]) * _mu(P, int(h), g)
        total = term if total is None else total + term
    return total


def shape_order_agrees(P: PosetPn) -> bool:
    """Edge containment and shifted-shape containment give the same relation."""
    return all(
        bool(P.leq[i, j]) == leq_by_shape(a, b)
        for i, a in enumerate(P.elements)
        for j, b in enumerate(P.elements)
    )
