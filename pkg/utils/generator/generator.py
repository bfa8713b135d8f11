# generator.py v1.2.0
"""Seeded generator of transportation-problem instances.

Random draws happen in one fixed order so a seed always reproduces the same instance:
node kinds (a permutation), coordinates (x then y, node by node), then edge attempts
node by node in id order. Goods allocation is deterministic and draws nothing.
"""
import logging
from itertools import combinations
from typing import List, Literal, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from utils.model.model import (
    DEFAULT_MAP_SIZE,
    Edge,
    Node,
    NodeKind,
    TransportGraph,
    euclidean_distance,
    travel_minutes,
)

log = logging.getLogger(__name__)

EDGE_CHANCE = 0.5


class GeneratorParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    total_nodes: int = Field(12, gt=0)
    max_edges_per_node: int = Field(2, gt=0)
    num_stores: int = Field(4, ge=0)
    num_warehouses: int = Field(2, ge=0)
    good_types: Literal[1] = 1
    total_supply: int = Field(100, ge=0)
    total_demand: int = Field(90, ge=0)
    map_size: float = Field(DEFAULT_MAP_SIZE, gt=0)
    velocity_min: int = Field(40, gt=0)
    velocity_max: int = Field(100, gt=0)
    seed: int = Field(0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_consistency(self) -> "GeneratorParams":
        if self.num_stores + self.num_warehouses > self.total_nodes:
            raise ValueError(
                f"num_stores + num_warehouses ({self.num_stores} + {self.num_warehouses}) "
                f"exceeds total_nodes ({self.total_nodes})")
        if self.velocity_min > self.velocity_max:
            raise ValueError(
                f"velocity_min ({self.velocity_min}) exceeds velocity_max ({self.velocity_max})")
        if self.total_supply > 0 and self.num_warehouses == 0:
            raise ValueError("total_supply > 0 needs at least one warehouse")
        if self.total_demand > 0 and self.num_stores == 0:
            raise ValueError("total_demand > 0 needs at least one store")
        return self


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def allocate_goods(total: int, bins: int) -> List[int]:
    """Hand out `total` units one at a time, round-robin from bin 0."""
    if total > 0 and bins <= 0:
        raise ValueError(f"cannot allocate {total} units over {bins} bins")
    if bins <= 0:
        return []
    base, extra = divmod(total, bins)
    # same result as the unit-by-unit round robin: the first `extra` bins get one more
    return [base + 1 if i < extra else base for i in range(bins)]


def sample_time(distance_km: float, rng: np.random.Generator,
                velocity_min: int = 40, velocity_max: int = 100) -> Tuple[int, int]:
    """Draw an integer velocity in [velocity_min, velocity_max]; return (minutes, velocity)."""
    velocity = int(rng.integers(velocity_min, velocity_max, endpoint=True))
    return travel_minutes(distance_km, velocity), velocity


def _make_edge(graph: TransportGraph, a: int, b: int, rng: np.random.Generator,
               velocity_min: int, velocity_max: int) -> Edge:
    na, nb = graph.node(a), graph.node(b)
    distance = euclidean_distance(na.x, na.y, nb.x, nb.y)
    time_min, velocity = sample_time(distance, rng, velocity_min, velocity_max)
    return Edge(a, b, distance, time_min, velocity)


class GraphGenerator:
    def __init__(self, params: GeneratorParams):
        self.params = params
        self.rng = make_rng(params.seed)

    def generate(self) -> TransportGraph:
        p = self.params
        graph = TransportGraph(map_size=p.map_size)

        kinds = self._draw_kinds()
        coords = self.rng.uniform(0.0, p.map_size, size=(p.total_nodes, 2))

        warehouses = [i for i, kind in enumerate(kinds) if kind == NodeKind.WAREHOUSE]
        stores = [i for i, kind in enumerate(kinds) if kind == NodeKind.STORE]
        supply = dict(zip(warehouses, allocate_goods(p.total_supply, len(warehouses))))
        demand = dict(zip(stores, allocate_goods(p.total_demand, len(stores))))

        for node_id in range(p.total_nodes):
            graph.add_node(Node(
                id=node_id,
                kind=kinds[node_id],
                x=float(coords[node_id, 0]),
                y=float(coords[node_id, 1]),
                supply=supply.get(node_id, 0),
                demand=demand.get(node_id, 0),
            ))

        self.spread_edges(graph)
        ensure_connected(graph, self.rng, p.velocity_min, p.velocity_max)
        log.info("Generated instance seed=%d: %d nodes, %d edges, supply %d, demand %d",
                 p.seed, len(graph.nodes), len(graph.edges), p.total_supply, p.total_demand)
        return graph

    def _draw_kinds(self) -> List[NodeKind]:
        p = self.params
        order = self.rng.permutation(p.total_nodes)
        kinds = [NodeKind.JOINT] * p.total_nodes
        for node_id in order[:p.num_warehouses]:
            kinds[int(node_id)] = NodeKind.WAREHOUSE
        for node_id in order[p.num_warehouses:p.num_warehouses + p.num_stores]:
            kinds[int(node_id)] = NodeKind.STORE
        return kinds

    def spread_edges(self, graph: TransportGraph) -> TransportGraph:
        p = self.params
        n = len(graph.nodes)
        if n < 2:
            return graph
        for source in range(n):
            created = 0
            for _ in range(p.max_edges_per_node):
                if self.rng.random() < EDGE_CHANCE and self._try_edge(graph, source):
                    created += 1
            if created == 0:
                # forced edge; it may still be skipped if every redraw hits an existing pair
                self._try_edge(graph, source)
        return graph

    def _try_edge(self, graph: TransportGraph, source: int) -> bool:
        n = len(graph.nodes)
        for _ in range(n - 1):
            # uniform over the other n-1 nodes, so a self-loop is never drawn
            target = int(self.rng.integers(0, n - 1))
            if target >= source:
                target += 1
            if graph.edge_between(source, target) is None:
                graph.add_edge(_make_edge(graph, source, target, self.rng,
                                          self.params.velocity_min, self.params.velocity_max))
                return True
        log.debug("Node %d: no free destination after %d draws", source, n - 1)
        return False


def spread_edges(graph: TransportGraph, params: GeneratorParams,
                 rng: np.random.Generator) -> TransportGraph:
    generator = GraphGenerator(params)
    generator.rng = rng
    return generator.spread_edges(graph)


def ensure_connected(graph: TransportGraph, rng: np.random.Generator,
                     velocity_min: int = 40, velocity_max: int = 100) -> TransportGraph:
    """Bridge components with the geometrically closest cross-component pair until connected."""
    if len(graph.nodes) <= 1:
        return graph
    nx_graph = graph.to_networkx()
    while True:
        components = list(nx.connected_components(nx_graph))
        if len(components) == 1:
            return graph
        component_of = {node: index for index, comp in enumerate(components) for node in comp}
        best = None
        for a, b in combinations(range(len(graph.nodes)), 2):
            if component_of[a] == component_of[b]:
                continue
            na, nb = graph.node(a), graph.node(b)
            distance = euclidean_distance(na.x, na.y, nb.x, nb.y)
            if best is None or distance < best[0]:
                best = (distance, a, b)
        _, a, b = best
        edge = graph.add_edge(_make_edge(graph, a, b, rng, velocity_min, velocity_max))
        nx_graph.add_edge(edge.a, edge.b)
        log.debug("Bridged components with edge %d--%d (%.3f km)", a, b, edge.distance_km)


def generate(params: GeneratorParams) -> TransportGraph:
    return GraphGenerator(params).generate()
