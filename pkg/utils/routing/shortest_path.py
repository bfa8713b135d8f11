# shortest_path.py v1.0.2
"""Least-cost routes under edge_cost (time + distance).

Labels are compared as (cost, hops, node sequence), so among equal-cost routes the one
with fewer hops wins, then the lexicographically smallest id sequence. Every extension
strictly increases the label, which keeps the label-setting search exact.
"""
import heapq
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from utils.model.errors import NoCandidateError, UnreachableError
from utils.model.model import Node, NodeKind, TransportGraph

log = logging.getLogger(__name__)

NodeFilter = Callable[[Node], bool]


@dataclass(frozen=True)
class Route:
    nodes: Tuple[int, ...]
    total_cost: float = 0.0
    total_distance_km: float = 0.0
    total_time_min: int = 0

    @property
    def origin(self) -> int:
        return self.nodes[0]

    @property
    def destination(self) -> int:
        return self.nodes[-1]

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1

    def edge_keys(self):
        return [(min(a, b), max(a, b)) for a, b in zip(self.nodes, self.nodes[1:])]


def cheapest_routes_from(graph: TransportGraph, origin: int) -> Dict[int, Route]:
    """Single-source search: best route from origin to every reachable node."""
    if not graph.has_node(origin):
        raise UnreachableError(f"origin node {origin} does not exist")

    best: Dict[int, Route] = {}
    heap = [(0.0, 0, (origin,), 0.0, 0)]
    while heap:
        cost, hops, path, distance, minutes = heapq.heappop(heap)
        node = path[-1]
        if node in best:
            continue
        best[node] = Route(path, cost, distance, minutes)
        for edge in graph.neighbours(node):
            nxt = edge.other(node)
            if nxt in best:
                continue
            heapq.heappush(heap, (cost + edge.cost, hops + 1, path + (nxt,),
                                  distance + edge.distance_km, minutes + edge.time_min))
    return best


def cheapest_route(graph: TransportGraph, origin: int, destination: int) -> Route:
    if not graph.has_node(destination):
        raise UnreachableError(f"destination node {destination} does not exist")
    routes = cheapest_routes_from(graph, origin)
    if destination not in routes:
        raise UnreachableError(f"node {destination} is unreachable from node {origin}")
    return routes[destination]


def pick_nearest(graph: TransportGraph, routes: Dict[int, Route], want: NodeKind,
                 accept: Optional[NodeFilter] = None) -> Tuple[int, Route]:
    """Choose among precomputed routes; ties on cost go to the smallest node id."""
    candidates = [
        (routes[node.id].total_cost, node.id)
        for node in graph.nodes_of_kind(want)
        if node.id in routes and (accept is None or accept(node))
    ]
    if not candidates:
        raise NoCandidateError(f"no reachable {want.value} satisfies the filter")
    _, node_id = min(candidates)
    return node_id, routes[node_id]


def nearest_of_kind(graph: TransportGraph, origin: int, want: NodeKind,
                    accept: Optional[NodeFilter] = None) -> Tuple[int, Route]:
    return pick_nearest(graph, cheapest_routes_from(graph, origin), want, accept)


class RouteCache:
    """Memoised single-source searches over one immutable graph."""

    def __init__(self, graph: TransportGraph):
        self.graph = graph
        self._trees: Dict[int, Dict[int, Route]] = {}

    def routes_from(self, origin: int) -> Dict[int, Route]:
        if origin not in self._trees:
            self._trees[origin] = cheapest_routes_from(self.graph, origin)
        return self._trees[origin]

    def nearest(self, origin: int, want: NodeKind,
                accept: Optional[NodeFilter] = None) -> Tuple[int, Route]:
        return pick_nearest(self.graph, self.routes_from(origin), want, accept)
