"""G-parking functions on the non-sink vertices 1..n, their codegree and pmaj."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterator, List, Sequence, Tuple, Union

from .errors import UnsupportedGraphError
from .flow import Host, as_network
from .graph import FlowNetwork

logger = logging.getLogger(__name__)


class ParkingMethod(str, Enum):
    SUBSETS = "subsets"
    BURNING = "burning"


@dataclass(frozen=True)
class ParkingFunction:
    """``values[i - 1]`` is P(i)."""

    network: FlowNetwork
    values: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def degree(self) -> int:
        return sum(self.values)

    def __le__(self, other: "ParkingFunction") -> bool:
        return all(x <= y for x, y in zip(self.values, other.values))

    def __lt__(self, other: "ParkingFunction") -> bool:
        return self.values != other.values and self <= other


def genus(host: Host) -> int:
    """|E| - |V| + 1."""
    network = as_network(host)
    return len(network.edges()) - network.n


def codeg(P: ParkingFunction) -> int:
    return genus(P.network) - P.degree()


def _satisfies_subsets(network: FlowNetwork, values: Sequence[int]) -> bool:
    vertices = range(1, network.n + 1)
    neighbors = {i: set(network.neighbors(i)) for i in vertices}
    for size in range(1, network.n + 1):
        for S in combinations(vertices, size):
            members = set(S)
            if not any(values[i - 1] < len(neighbors[i] - members) for i in S):
                return False
    return True


def _satisfies_burning(network: FlowNetwork, values: Sequence[int]) -> bool:
    # Dhar: burn from the sink; a vertex catches fire once its burnt neighbors exceed its value
    burnt = {0}
    unburnt = set(range(1, network.n + 1))
    neighbors = {i: set(network.neighbors(i)) for i in unburnt}
    progress = True
    while unburnt and progress:
        progress = False
        for i in sorted(unburnt):
            if values[i - 1] < len(neighbors[i] & burnt):
                burnt.add(i)
                unburnt.discard(i)
                progress = True
    return not unburnt


def is_parking(
    values: Sequence[int], host: Host, method: Union[ParkingMethod, str] = ParkingMethod.SUBSETS
) -> bool:
    network = as_network(host)
    if len(values) != network.n or any(v < 0 for v in values):
        return False
    if ParkingMethod(method) is ParkingMethod.BURNING:
        return _satisfies_burning(network, values)
    return _satisfies_subsets(network, values)


def enumerate_parking_functions(
    host: Host, method: Union[ParkingMethod, str] = ParkingMethod.SUBSETS
) -> Iterator[ParkingFunction]:
    """All parking functions, lexicographic in (P(1), ..., P(n)).

    P(i) < deg(i) is forced by the singleton S = {i}, which bounds the search.
    """
    network = as_network(host)
    degrees = network.degrees()
    ranges = [range(degrees[i]) for i in range(1, network.n + 1)]
    for values in product(*ranges):
        if is_parking(values, network, method):
            yield ParkingFunction(network, tuple(values))


def maximal_parking_functions(host: Host) -> List[ParkingFunction]:
    """Parking functions where no single coordinate can be raised."""
    network = as_network(host)
    found = []
    for P in enumerate_parking_functions(network, ParkingMethod.BURNING):
        bumped = (
            P.values[:k] + (P.values[k] + 1,) + P.values[k + 1 :] for k in range(P.n)
        )
        if not any(is_parking(v, network, ParkingMethod.BURNING) for v in bumped):
            found.append(P)
    return found


def _ascent_major(Q: ParkingFunction) -> int:
    # read the cars in spot order and add n - k for every ascent at position k
    n = Q.n
    word = [0] * n
    for car, spot in enumerate(Q.values, start=1):
        word[spot] = car
    return sum(n - k for k in range(1, n) if word[k - 1] < word[k])


def pmaj(P: ParkingFunction, maximal: Sequence[ParkingFunction] | None = None) -> int:
    """pmaj on the complete graph.

    A maximal parking function is a bijection onto {0, ..., n-1} and gets the
    ascent sum of its spot-order word. Any other P gets the minimum over the
    maximal parking functions above it.
    """
    network = P.network
    if not network.is_complete():
        raise UnsupportedGraphError("pmaj is only defined on complete graphs")
    if sorted(P.values) == list(range(P.n)):
        return _ascent_major(P)
    if maximal is None:
        maximal = maximal_parking_functions(network)
    return min(_ascent_major(Q) for Q in maximal if P < Q)
