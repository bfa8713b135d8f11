# router.py v1.3.1
"""Greedy threshold-driven single-truck delivery.

At the start of every segment the truck compares its load with T x MAX_CAPACITY:
below it heads for the cheapest-to-reach warehouse that still has stock, otherwise for
the cheapest-to-reach store that still waits for goods. A qualifying node under the
truck is reached at zero cost. When no warehouse has stock left the truck keeps
shipping what it carries; the run is partial once it is empty with demand outstanding.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from utils.model.errors import (
    ContractViolation,
    DisconnectedGraphError,
    GraphValidationError,
    NoCandidateError,
    ProgressError,
)
from utils.model.model import NodeKind, TransportGraph, TruckState, validate
from utils.routing.shortest_path import Route, RouteCache

log = logging.getLogger(__name__)


class SolverParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    start_node: int = Field(0, ge=0)
    initial_load: int = Field(0, ge=0)
    max_capacity: int = Field(20, gt=0)
    threshold: float = Field(0.5, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_load(self) -> "SolverParams":
        if self.initial_load > self.max_capacity:
            raise ValueError(f"initial_load ({self.initial_load}) exceeds "
                             f"max_capacity ({self.max_capacity})")
        return self


class SegmentKind(str, Enum):
    RESTOCK = "restock"
    SHIP = "ship"


class SolveStatus(str, Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"


class DecisionRule(str, Enum):
    WAREHOUSE_RESTOCK = "warehouse_below_threshold"
    JOINT_RESTOCK = "joint_below_threshold"
    STORE_RESTOCK = "store_below_threshold"
    WAREHOUSE_SHIP = "warehouse_at_threshold"
    JOINT_SHIP = "joint_at_threshold"
    STORE_SHIP = "store_at_threshold"
    SUPPLY_DEPLETED = "supply_depleted"


RULE_DESCRIPTIONS = {
    DecisionRule.WAREHOUSE_RESTOCK: "at a warehouse below threshold: restock at the nearest warehouse",
    DecisionRule.JOINT_RESTOCK: "at a joint below threshold: go to the nearest warehouse to restock",
    DecisionRule.STORE_RESTOCK: "at a store below threshold: go to the nearest warehouse to restock",
    DecisionRule.WAREHOUSE_SHIP: "at a warehouse at or above threshold: go to the nearest store to drop goods",
    DecisionRule.JOINT_SHIP: "at a joint at or above threshold: go to the nearest store to drop goods",
    DecisionRule.STORE_SHIP: "at a store at or above threshold: drop goods at the nearest store",
    DecisionRule.SUPPLY_DEPLETED: "no warehouse has stock left: ship the remaining load to the nearest store",
}

_RESTOCK_RULES = {
    NodeKind.WAREHOUSE: DecisionRule.WAREHOUSE_RESTOCK,
    NodeKind.JOINT: DecisionRule.JOINT_RESTOCK,
    NodeKind.STORE: DecisionRule.STORE_RESTOCK,
}
_SHIP_RULES = {
    NodeKind.WAREHOUSE: DecisionRule.WAREHOUSE_SHIP,
    NodeKind.JOINT: DecisionRule.JOINT_SHIP,
    NodeKind.STORE: DecisionRule.STORE_SHIP,
}


@dataclass
class Ledger:
    """Mutable per-run view of warehouse stock and store demand."""

    supply: Dict[int, int]
    demand: Dict[int, int]
    delivered: int = 0

    @classmethod
    def from_graph(cls, graph: TransportGraph) -> "Ledger":
        return cls(
            supply={n.id: n.supply for n in graph.nodes_of_kind(NodeKind.WAREHOUSE)},
            demand={n.id: n.demand for n in graph.nodes_of_kind(NodeKind.STORE)},
        )

    @property
    def remaining_supply(self) -> int:
        return sum(self.supply.values())

    @property
    def remaining_demand(self) -> int:
        return sum(self.demand.values())


@dataclass(frozen=True)
class RestockAt:
    node: int
    route: Route
    rule: DecisionRule


@dataclass(frozen=True)
class ShipTo:
    node: int
    route: Route
    rule: DecisionRule


@dataclass(frozen=True)
class Stop:
    status: SolveStatus


Decision = Union[RestockAt, ShipTo, Stop]


@dataclass(frozen=True)
class PathSegment:
    step: int
    kind: SegmentKind
    rule: DecisionRule
    origin: int
    origin_kind: NodeKind
    target: int
    target_kind: NodeKind
    route: Route
    moved_units: int
    load_before: int
    load_after: int
    remaining_supply: int
    remaining_demand: int
    delivered_total: int

    @property
    def decision_cost(self) -> float:
        return self.route.total_cost


@dataclass
class SolveOutcome:
    status: SolveStatus
    params: SolverParams
    segments: List[PathSegment] = field(default_factory=list)
    full_path: List[int] = field(default_factory=list)
    delivered_total: int = 0
    remaining_demand: int = 0
    remaining_supply: int = 0
    truck_load_final: int = 0
    initial_supply: int = 0
    initial_demand: int = 0
    elapsed_runtime: float = 0.0

    @property
    def total_cost(self) -> float:
        return sum((segment.decision_cost for segment in self.segments), 0.0)

    @property
    def total_distance_km(self) -> float:
        return sum((segment.route.total_distance_km for segment in self.segments), 0.0)

    @property
    def total_time_min(self) -> int:
        return sum(segment.route.total_time_min for segment in self.segments)


def decide_next(graph: TransportGraph, truck: TruckState, ledger: Ledger,
                routes: Optional[RouteCache] = None) -> Decision:
    routes = routes or RouteCache(graph)
    if ledger.remaining_demand == 0:
        return Stop(SolveStatus.COMPLETE)

    here = graph.node(truck.position).kind
    rule = _SHIP_RULES[here]
    # an empty truck cannot ship, whatever T says
    if truck.below_threshold or truck.load == 0:
        try:
            target, route = routes.nearest(
                truck.position, NodeKind.WAREHOUSE, lambda n: ledger.supply.get(n.id, 0) > 0)
            return RestockAt(target, route, _RESTOCK_RULES[here])
        except NoCandidateError:
            if truck.load == 0:
                return Stop(SolveStatus.PARTIAL)
            rule = DecisionRule.SUPPLY_DEPLETED

    target, route = routes.nearest(
        truck.position, NodeKind.STORE, lambda n: ledger.demand.get(n.id, 0) > 0)
    return ShipTo(target, route, rule)


def apply_restock(ledger: Ledger, truck: TruckState, warehouse: int) -> int:
    stock = ledger.supply.get(warehouse, 0)
    if stock <= 0:
        raise ContractViolation(f"warehouse {warehouse} has no stock")
    if truck.load >= truck.max_capacity:
        raise ContractViolation(f"truck is full ({truck.load}/{truck.max_capacity})")
    moved = min(truck.max_capacity - truck.load, stock)
    ledger.supply[warehouse] = stock - moved
    truck.load += moved
    return moved


def apply_ship(ledger: Ledger, truck: TruckState, store: int) -> int:
    wanted = ledger.demand.get(store, 0)
    if wanted <= 0:
        raise ContractViolation(f"store {store} has no demand")
    if truck.load <= 0:
        raise ContractViolation("truck is empty")
    moved = min(truck.load, wanted)
    ledger.demand[store] = wanted - moved
    ledger.delivered += moved
    truck.load -= moved
    return moved


def solve(graph: TransportGraph, params: SolverParams) -> SolveOutcome:
    violations = validate(graph)
    if violations:
        if not graph.is_connected():
            raise DisconnectedGraphError("instance graph is disconnected")
        raise GraphValidationError(violations)
    if not graph.has_node(params.start_node):
        raise ContractViolation(f"start node {params.start_node} does not exist")

    started = time.perf_counter()
    ledger = Ledger.from_graph(graph)
    truck = TruckState(position=params.start_node, load=params.initial_load,
                       max_capacity=params.max_capacity, threshold=params.threshold)
    routes = RouteCache(graph)
    outcome = SolveOutcome(status=SolveStatus.PARTIAL, params=params,
                           full_path=[params.start_node],
                           initial_supply=ledger.remaining_supply,
                           initial_demand=ledger.remaining_demand)

    while True:
        decision = decide_next(graph, truck, ledger, routes)
        load_before, origin = truck.load, truck.position
        match decision:
            case Stop(status=status):
                outcome.status = status
                break
            case RestockAt(node=target, route=route, rule=rule):
                kind = SegmentKind.RESTOCK
                moved = apply_restock(ledger, truck, target)
            case ShipTo(node=target, route=route, rule=rule):
                kind = SegmentKind.SHIP
                moved = apply_ship(ledger, truck, target)
        if moved <= 0:
            raise ProgressError(f"segment {len(outcome.segments) + 1} moved no goods")

        truck.position = target
        segment = PathSegment(
            step=len(outcome.segments) + 1,
            kind=kind,
            rule=rule,
            origin=origin,
            origin_kind=graph.node(origin).kind,
            target=target,
            target_kind=graph.node(target).kind,
            route=route,
            moved_units=moved,
            load_before=load_before,
            load_after=truck.load,
            remaining_supply=ledger.remaining_supply,
            remaining_demand=ledger.remaining_demand,
            delivered_total=ledger.delivered,
        )
        outcome.segments.append(segment)
        outcome.full_path.extend(route.nodes[1:])
        log.debug("Step %d: %s %d units at node %d (cost %.1f, load %d)",
                  segment.step, kind.value, moved, target, route.total_cost, truck.load)

    outcome.elapsed_runtime = time.perf_counter() - started
    outcome.delivered_total = ledger.delivered
    outcome.remaining_demand = ledger.remaining_demand
    outcome.remaining_supply = ledger.remaining_supply
    outcome.truck_load_final = truck.load
    log.info("Solve finished: %s, %d segments, delivered %d, cost %.1f",
             outcome.status.value, len(outcome.segments), outcome.delivered_total,
             outcome.total_cost)
    return outcome
