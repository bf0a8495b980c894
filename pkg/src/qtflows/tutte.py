"""Tutte polynomials of multigraphs.

x lives in the q slot and y in the t slot of QTPolynomial, so t_G(1, q) is
``tutte(M).substitute(q=1, t=Q)``.
"""
from __future__ import annotations

import logging
from itertools import permutations, product
from math import factorial, prod
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .errors import DisconnectedGraphError
from .graph import Multigraph
from .poly import ONE, Q, T, QTPolynomial, t_bracket

logger = logging.getLogger(__name__)

Classes = Tuple[Tuple[int, int, int], ...]
X, Y = Q, T


def _simple_graph(k: int, classes: Classes) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(k))
    graph.add_edges_from((u, v) for u, v, _ in classes)
    return graph


def _contract(k: int, classes: Classes, u: int, v: int) -> Classes:
    """Merge v into u (u < v) after the u-v class has been removed."""

    def image(w: int) -> int:
        if w == v:
            return u
        return w - 1 if w > v else w

    merged: Dict[Tuple[int, int], int] = {}
    for a, b, m in classes:
        if (a, b) == (u, v):
            continue
        a2, b2 = sorted((image(a), image(b)))
        merged[(a2, b2)] = merged.get((a2, b2), 0) + m
    return tuple((a, b, m) for (a, b), m in sorted(merged.items()))


def _bridge_factor(m: int) -> QTPolynomial:
    # m parallel copies of a bridge: x + y + y^2 + ... + y^(m-1)
    return X + (t_bracket(m) - ONE)


class TutteSolver:
    """Deletion-contraction over parallel classes with a memo keyed on a canonical form.

    The canonical form refines vertex colors by neighborhood and then takes the
    smallest edge list over all orderings inside color cells. Graphs with more
    than ``max_vertices`` vertices, or whose cells allow more than
    ``max_relabelings`` orderings, are keyed on their labeled edge list instead.
    """

    def __init__(self, max_vertices: int = 10, max_relabelings: int = 5040) -> None:
        self.max_vertices = max_vertices
        self.max_relabelings = max_relabelings
        self._memo: Dict[tuple, QTPolynomial] = {}
        self.hits = 0
        self.misses = 0

    def __call__(self, graph: Multigraph) -> QTPolynomial:
        k = graph.vertex_count
        if not nx.is_connected(_simple_graph(k, graph.edges)):
            raise DisconnectedGraphError("the Tutte polynomial is computed for connected multigraphs only")
        result = self._solve(k, tuple(sorted(graph.edges))) * Y**graph.loops
        logger.debug("tutte: %d memo hits, %d misses, %d entries", self.hits, self.misses, len(self._memo))
        return result

    def canonical_key(self, k: int, classes: Classes) -> tuple:
        cells = self._color_cells(k, classes)
        budget = prod(factorial(len(c)) for c in cells)
        if k > self.max_vertices or budget > self.max_relabelings:
            return ("labeled", k, classes)
        best: Optional[Classes] = None
        for orders in product(*(permutations(c) for c in cells)):
            position = {}
            for vertex in (w for order in orders for w in order):
                position[vertex] = len(position)
            relabeled = tuple(
                sorted((min(position[a], position[b]), max(position[a], position[b]), m) for a, b, m in classes)
            )
            if best is None or relabeled < best:
                best = relabeled
        return ("canonical", k, best)

    @staticmethod
    def _color_cells(k: int, classes: Classes) -> List[List[int]]:
        adjacency: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(k)}
        for a, b, m in classes:
            adjacency[a].append((b, m))
            adjacency[b].append((a, m))
        colors = [0] * k
        count = 1
        while True:
            signature = [
                (colors[v], tuple(sorted((colors[w], m) for w, m in adjacency[v]))) for v in range(k)
            ]
            ranks = {sig: r for r, sig in enumerate(sorted(set(signature)))}
            colors = [ranks[s] for s in signature]
            if len(ranks) == count:
                break
            count = len(ranks)
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        return [cells[c] for c in sorted(cells)]

    def _solve(self, k: int, classes: Classes) -> QTPolynomial:
        if not classes:
            return ONE
        key = self.canonical_key(k, classes)
        cached = self._memo.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        self.misses += 1
        bridges = {tuple(sorted(e)) for e in nx.bridges(_simple_graph(k, classes))}
        loose = [c for c in classes if (c[0], c[1]) not in bridges]
        if not loose:
            result = prod((_bridge_factor(m) for _, _, m in classes), start=ONE)
        else:
            u, v, m = max(loose, key=lambda c: c[2])
            rest = tuple(c for c in classes if c != (u, v, m))
            result = self._solve(k, rest) + t_bracket(m) * self._solve(k - 1, _contract(k, classes, u, v))
        self._memo[key] = result
        return result


def tutte(graph: Multigraph, solver: Optional[TutteSolver] = None) -> QTPolynomial:
    return (solver or TutteSolver())(graph)


def tutte_subset_sum(graph: Multigraph) -> QTPolynomial:
    """Sum over edge subsets A of (x-1)^(k(A)-k(E)) (y-1)^(k(A)+|A|-|V|)."""
    edges = graph.expanded_edges() + [(0, 0)] * graph.loops
    k_total = nx.number_connected_components(_spanning(graph.vertex_count, edges))
    total = QTPolynomial()
    for mask in range(2 ** len(edges)):
        chosen = [e for bit, e in enumerate(edges) if mask >> bit & 1]
        k_sub = nx.number_connected_components(_spanning(graph.vertex_count, chosen))
        total = total + (X - 1) ** (k_sub - k_total) * (Y - 1) ** (k_sub + len(chosen) - graph.vertex_count)
    return total


def _spanning(k: int, edges: List[Tuple[int, int]]) -> nx.MultiGraph:
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(k))
    graph.add_edges_from(edges)
    return graph
