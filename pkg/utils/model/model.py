# model.py v1.1.0
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from utils.model.errors import ContractViolation

DEFAULT_MAP_SIZE = 1000.0


class NodeKind(str, Enum):
    STORE = "store"
    WAREHOUSE = "warehouse"
    JOINT = "joint"


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    x: float
    y: float
    supply: int = 0
    demand: int = 0


@dataclass(frozen=True)
class Edge:
    """Undirected road between two nodes; endpoints are stored as (min, max)."""

    a: int
    b: int
    distance_km: float
    time_min: int
    velocity_kmh: Optional[int] = None

    def __post_init__(self):
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)

    @property
    def key(self) -> Tuple[int, int]:
        return (self.a, self.b)

    @property
    def cost(self) -> float:
        return edge_cost(self)

    def other(self, node_id: int) -> int:
        return self.b if node_id == self.a else self.a


def edge_cost(edge: Edge) -> float:
    # time (min) + distance (km); mixing units is the heuristic itself
    return float(edge.time_min) + float(edge.distance_km)


def euclidean_distance(ax: float, ay: float, bx: float, by: float) -> float:
    return math.hypot(ax - bx, ay - by)


def travel_minutes(distance_km: float, velocity_kmh: int) -> int:
    """Minutes needed to cover distance_km at velocity_kmh, fraction truncated."""
    return int((distance_km / velocity_kmh) * 60)


@dataclass(eq=False)
class TransportGraph:
    map_size: float = DEFAULT_MAP_SIZE
    nodes: List[Node] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    adjacency: Dict[int, List[Edge]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        edges, self.edges = list(self.edges), []
        self.adjacency = {node.id: [] for node in self.nodes}
        self._edge_index: Dict[Tuple[int, int], Edge] = {}
        for edge in edges:
            self.add_edge(edge)

    def add_node(self, node: Node) -> Node:
        self.nodes.append(node)
        self.adjacency.setdefault(node.id, [])
        return node

    def add_edge(self, edge: Edge) -> Edge:
        # Duplicates and dangling endpoints are stored as given; validate() reports them.
        self.edges.append(edge)
        self.adjacency.setdefault(edge.a, []).append(edge)
        if edge.b != edge.a:
            self.adjacency.setdefault(edge.b, []).append(edge)
        self._edge_index.setdefault(edge.key, edge)
        return edge

    def node(self, node_id: int) -> Node:
        return self.nodes[node_id]

    def has_node(self, node_id: int) -> bool:
        return 0 <= node_id < len(self.nodes) and self.nodes[node_id].id == node_id

    def edge_between(self, a: int, b: int) -> Optional[Edge]:
        return self._edge_index.get((min(a, b), max(a, b)))

    def neighbours(self, node_id: int) -> List[Edge]:
        return self.adjacency.get(node_id, [])

    def nodes_of_kind(self, kind: NodeKind) -> Iterator[Node]:
        return (node for node in self.nodes if node.kind == kind)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges, key=lambda e: e.key)

    @property
    def total_supply(self) -> int:
        return sum(node.supply for node in self.nodes)

    @property
    def total_demand(self) -> int:
        return sum(node.demand for node in self.nodes)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for node in self.nodes:
            graph.add_node(node.id, kind=node.kind.value, x=node.x, y=node.y,
                           supply=node.supply, demand=node.demand)
        for edge in self.edges:
            graph.add_edge(edge.a, edge.b, distance=edge.distance_km, time=edge.time_min,
                           velocity=edge.velocity_kmh, cost=edge.cost)
        return graph

    def is_connected(self) -> bool:
        if len(self.nodes) <= 1:
            return True
        return nx.is_connected(self.to_networkx())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransportGraph):
            return NotImplemented
        return (self.map_size == other.map_size
                and self.nodes == other.nodes
                and self.sorted_edges() == other.sorted_edges())


@dataclass
class TruckState:
    position: int
    load: int
    max_capacity: int
    threshold: float

    def __post_init__(self):
        if self.max_capacity <= 0:
            raise ContractViolation(f"max_capacity must be positive, got {self.max_capacity}")
        if not 0 <= self.load <= self.max_capacity:
            raise ContractViolation(
                f"load {self.load} outside [0, {self.max_capacity}]")

    @property
    def restock_level(self) -> float:
        return self.threshold * self.max_capacity

    @property
    def below_threshold(self) -> bool:
        return self.load < self.restock_level


def validate(graph: TransportGraph) -> List[str]:
    """Return one message per broken graph invariant; an empty list means the graph is sound."""
    violations: List[str] = []

    if not graph.map_size > 0:
        violations.append(f"map size must be positive, got {graph.map_size}")

    id_counts = Counter(node.id for node in graph.nodes)
    for node_id, count in sorted(id_counts.items()):
        if count > 1:
            violations.append(f"node id {node_id} appears {count} times")
    for position, node in enumerate(graph.nodes):
        if node.id != position:
            violations.append(
                f"node at position {position} has id {node.id}; ids must be contiguous from 0")

    for node in graph.nodes:
        if node.supply < 0 or node.demand < 0:
            violations.append(f"node {node.id}: supply and demand must be non-negative")
        if node.kind == NodeKind.WAREHOUSE and node.demand != 0:
            violations.append(f"node {node.id}: warehouse demand nonzero ({node.demand})")
        elif node.kind == NodeKind.STORE and node.supply != 0:
            violations.append(f"node {node.id}: store supply nonzero ({node.supply})")
        elif node.kind == NodeKind.JOINT and (node.supply != 0 or node.demand != 0):
            violations.append(f"node {node.id}: joint supply/demand nonzero "
                              f"({node.supply}/{node.demand})")
        if not (0 <= node.x <= graph.map_size and 0 <= node.y <= graph.map_size):
            violations.append(f"node {node.id}: coordinates ({node.x}, {node.y}) "
                              f"outside [0, {graph.map_size}]")

    known = set(id_counts)
    seen_pairs = set()
    dangling = False
    for edge in graph.edges:
        label = f"edge {edge.a}--{edge.b}"
        if edge.a == edge.b:
            violations.append(f"{label}: self-loop")
        for endpoint in (edge.a, edge.b):
            if endpoint not in known:
                dangling = True
                violations.append(f"{label}: dangling endpoint {endpoint} "
                                  f"(graph has {len(graph.nodes)} nodes)")
        if edge.key in seen_pairs:
            violations.append(f"{label}: duplicate edge")
        seen_pairs.add(edge.key)
        if not edge.distance_km > 0:
            violations.append(f"{label}: distance must be positive, got {edge.distance_km}")
        if edge.time_min < 0:
            violations.append(f"{label}: time must be non-negative, got {edge.time_min}")
        if edge.velocity_kmh is not None:
            if edge.velocity_kmh <= 0:
                violations.append(f"{label}: velocity must be positive, got {edge.velocity_kmh}")
            elif edge.time_min != travel_minutes(edge.distance_km, edge.velocity_kmh):
                violations.append(
                    f"{label}: time {edge.time_min} does not match distance "
                    f"{edge.distance_km} at {edge.velocity_kmh} km/h")

    incidence = sum(len(edges) for edges in graph.adjacency.values())
    expected = sum(1 if e.a == e.b else 2 for e in graph.edges)
    if incidence != expected:
        violations.append("adjacency lists are inconsistent with the edge collection")

    if not dangling and not graph.is_connected():
        components = nx.number_connected_components(graph.to_networkx())
        violations.append(f"graph is disconnected ({components} components)")

    return violations
