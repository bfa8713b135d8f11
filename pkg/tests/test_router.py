import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from tests.conftest import GENERATED_SEED, road
from tests.strategies import instances
from utils.generator.generator import GeneratorParams, generate
from utils.model.errors import ContractViolation, DisconnectedGraphError, GraphValidationError
from utils.model.model import Node, NodeKind, TransportGraph, TruckState
from utils.routing.router import (
    DecisionRule,
    Ledger,
    RestockAt,
    SegmentKind,
    SolverParams,
    SolveStatus,
    Stop,
    apply_restock,
    apply_ship,
    decide_next,
    solve,
)
from utils.routing.shortest_path import cheapest_route


def test_reference_worked_example(reference_graph):
    outcome = solve(reference_graph, SolverParams(max_capacity=20, threshold=0.5))
    assert outcome.status == SolveStatus.COMPLETE
    assert outcome.remaining_demand == 0
    assert outcome.remaining_supply == 0
    assert outcome.truck_load_final == 10
    assert outcome.delivered_total == 90
    assert [s.decision_cost for s in outcome.segments] == [
        100.0, 400.0, 400.0, 400.0, 300.0, 700.0, 500.0,
        400.0, 400.0, 400.0, 700.0, 700.0, 700.0, 1500.0,
    ]
    assert outcome.total_cost == 7600.0
    assert outcome.elapsed_runtime < 1.0


def test_reference_decision_trace(reference_graph):
    segments = solve(reference_graph, SolverParams()).segments
    assert segments[0].rule == DecisionRule.JOINT_RESTOCK
    assert segments[0].route.nodes == (0, 5)
    assert segments[1].rule == DecisionRule.WAREHOUSE_SHIP
    assert segments[2].rule == DecisionRule.STORE_RESTOCK
    assert segments[4].rule == DecisionRule.STORE_SHIP
    assert (segments[4].load_before, segments[4].moved_units, segments[4].target) == (17, 17, 1)


def test_full_path_concatenates_routes(line_graph):
    outcome = solve(line_graph, SolverParams())
    assert outcome.full_path == [0, 1, 2, 1, 0, 1, 2]
    assert [s.kind for s in outcome.segments] == [
        SegmentKind.RESTOCK, SegmentKind.SHIP, SegmentKind.RESTOCK, SegmentKind.SHIP]
    # restocking where the truck already stands is a zero-cost segment
    assert outcome.segments[0].route.nodes == (0,)
    assert outcome.total_cost == 1200.0
    assert outcome.total_distance_km == 600.0
    assert outcome.total_time_min == 600


def test_overconstrained_instance_is_partial(line_graph):
    line_graph.nodes[0] = Node(0, NodeKind.WAREHOUSE, 0.0, 0.0, supply=10)
    outcome = solve(line_graph, SolverParams())
    assert outcome.status == SolveStatus.PARTIAL
    assert outcome.delivered_total == 10
    assert outcome.remaining_demand == 15
    assert outcome.truck_load_final == 0


def test_depleted_supply_ships_what_is_left(reference_graph):
    outcome = solve(reference_graph, SolverParams(max_capacity=100))
    assert outcome.status == SolveStatus.COMPLETE
    assert len(outcome.segments) == 6
    assert outcome.segments[-1].rule == DecisionRule.SUPPLY_DEPLETED
    assert outcome.truck_load_final == 10


def test_full_threshold_tops_up_then_ships(line_graph):
    outcome = solve(line_graph, SolverParams(threshold=1.0))
    assert outcome.status == SolveStatus.COMPLETE
    assert outcome.segments[-1].rule == DecisionRule.SUPPLY_DEPLETED


def test_zero_threshold_still_restocks_an_empty_truck(line_graph):
    outcome = solve(line_graph, SolverParams(threshold=0.0))
    assert outcome.segments[0].kind == SegmentKind.RESTOCK
    assert outcome.status == SolveStatus.COMPLETE


def test_initial_load_is_shipped_first(line_graph):
    outcome = solve(line_graph, SolverParams(initial_load=20))
    assert outcome.segments[0].kind == SegmentKind.SHIP
    assert outcome.remaining_supply == 10
    assert outcome.truck_load_final == 15


def test_nothing_to_do_is_complete(line_graph):
    line_graph.nodes[2] = Node(2, NodeKind.STORE, 200.0, 0.0, demand=0)
    outcome = solve(line_graph, SolverParams())
    assert outcome.status == SolveStatus.COMPLETE
    assert outcome.segments == [] and outcome.total_cost == 0.0


@pytest.mark.parametrize("kwargs", [
    {"max_capacity": 0},
    {"threshold": 1.5},
    {"threshold": -0.1},
    {"initial_load": 25, "max_capacity": 20},
    {"start_node": -1},
])
def test_params_preconditions(kwargs):
    with pytest.raises(ValidationError):
        SolverParams(**kwargs)


def test_unknown_start_node(line_graph):
    with pytest.raises(ContractViolation):
        solve(line_graph, SolverParams(start_node=9))


def test_disconnected_instance_is_refused(line_graph):
    line_graph.add_node(Node(3, NodeKind.JOINT, 50.0, 50.0))
    with pytest.raises(DisconnectedGraphError):
        solve(line_graph, SolverParams())


def test_invalid_instance_is_refused(line_graph):
    line_graph.nodes[1] = Node(1, NodeKind.JOINT, 100.0, 0.0, demand=3)
    with pytest.raises(GraphValidationError):
        solve(line_graph, SolverParams())


def test_decide_next(line_graph):
    ledger = Ledger.from_graph(line_graph)
    truck = TruckState(position=2, load=0, max_capacity=20, threshold=0.5)
    decision = decide_next(line_graph, truck, ledger)
    assert isinstance(decision, RestockAt)
    assert decision.node == 0 and decision.route.total_cost == 400.0
    ledger.demand[2] = 0
    assert decide_next(line_graph, truck, ledger) == Stop(SolveStatus.COMPLETE)


def test_transfer_contracts(line_graph):
    ledger = Ledger.from_graph(line_graph)
    truck = TruckState(position=0, load=0, max_capacity=20, threshold=0.5)
    with pytest.raises(ContractViolation):
        apply_ship(ledger, truck, 2)
    assert apply_restock(ledger, truck, 0) == 20
    with pytest.raises(ContractViolation):
        apply_restock(ledger, truck, 0)
    assert apply_ship(ledger, truck, 2) == 20
    assert ledger.delivered == 20 and ledger.supply[0] == 10


def _check_outcome(graph: TransportGraph, params: SolverParams) -> None:
    outcome = solve(graph, params)
    supply, demand = graph.total_supply, graph.total_demand
    assert outcome.delivered_total == min(supply + params.initial_load, demand)
    assert len(outcome.segments) <= supply + demand
    total = supply + params.initial_load
    for segment in outcome.segments:
        assert segment.moved_units > 0
        assert segment.route.origin == segment.origin
        assert segment.route.destination == segment.target
        assert segment.decision_cost == pytest.approx(
            cheapest_route(graph, segment.origin, segment.target).total_cost, abs=1e-9)
        assert 0 <= segment.load_after <= params.max_capacity
        assert segment.remaining_supply + segment.load_after + segment.delivered_total == total
    if outcome.status == SolveStatus.COMPLETE:
        assert outcome.remaining_demand == 0
        assert outcome.remaining_supply + outcome.truck_load_final == total - demand
    else:
        assert outcome.remaining_supply == 0 and outcome.truck_load_final == 0


@settings(max_examples=200, deadline=None)
@given(instances())
def test_greedy_invariants_on_random_instances(graph):
    for capacity, threshold in ((20, 0.5), (7, 0.0), (50, 1.0)):
        _check_outcome(graph, SolverParams(max_capacity=capacity, threshold=threshold))


@settings(max_examples=50, deadline=None)
@given(instances(max_nodes=16))
def test_determinism(graph):
    first = solve(graph, SolverParams())
    second = solve(graph, SolverParams())
    assert first.full_path == second.full_path
    assert [s.decision_cost for s in first.segments] == [s.decision_cost for s in second.segments]


def test_generated_instance_worked_example():
    graph = generate(GeneratorParams(seed=GENERATED_SEED))
    outcome = solve(graph, SolverParams(max_capacity=20, threshold=0.5))
    assert outcome.status == SolveStatus.COMPLETE
    assert outcome.delivered_total == 90
    # 100 supplied, 90 demanded: the surplus sits in warehouses or on the truck
    assert outcome.remaining_supply + outcome.truck_load_final == 10
