# report.py v1.2.0
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Annotated, Dict, List, Literal, Tuple, Union

from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from utils.graphviz.graphviz_io import emit_dot
from utils.model.errors import StructuredOutputError
from utils.model.model import TransportGraph
from utils.routing.router import (
    RULE_DESCRIPTIONS,
    DecisionRule,
    SegmentKind,
    SolveOutcome,
    SolveStatus,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LogEntry:
    step: int
    position: int
    position_kind: str
    load_before: int
    load_after: int
    rule: str
    target: int
    target_kind: str
    kind: str
    route: Tuple[int, ...]
    moved_units: int
    decision_cost: float
    remaining_supply: int
    remaining_demand: int


def log_entries(outcome: SolveOutcome) -> List[LogEntry]:
    return [
        LogEntry(
            step=s.step,
            position=s.origin,
            position_kind=s.origin_kind.value,
            load_before=s.load_before,
            load_after=s.load_after,
            rule=s.rule.value,
            target=s.target,
            target_kind=s.target_kind.value,
            kind=s.kind.value,
            route=s.route.nodes,
            moved_units=s.moved_units,
            decision_cost=s.decision_cost,
            remaining_supply=s.remaining_supply,
            remaining_demand=s.remaining_demand,
        )
        for s in outcome.segments
    ]


def one_decimal(value: float) -> str:
    """One decimal place, rounding half up."""
    return str(Decimal(repr(float(value))).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def _path(nodes) -> str:
    return " -> ".join(str(n) for n in nodes)


def render_log(outcome: SolveOutcome) -> str:
    p = outcome.params
    lines = [
        "=== Routing algorithm log ===",
        f"Truck: start node {p.start_node}, initial load {p.initial_load}, "
        f"max capacity {p.max_capacity}, resupply threshold T={p.threshold} "
        f"(restock below {p.threshold * p.max_capacity:g} units)",
        f"Initial totals: supply {outcome.initial_supply}, demand {outcome.initial_demand}",
        "",
    ]

    for entry in log_entries(outcome):
        verb = "Loaded" if entry.kind == SegmentKind.RESTOCK.value else "Delivered"
        lines += [
            f"--- Segment {entry.step} ({entry.kind}) ---",
            f"Position: node {entry.position} ({entry.position_kind}), "
            f"load {entry.load_before}/{p.max_capacity}",
            f"Decision: {RULE_DESCRIPTIONS[DecisionRule(entry.rule)]}",
            f"Target: node {entry.target} ({entry.target_kind})",
            f"Route: {_path(entry.route)}",
            f"Decision cost: {one_decimal(entry.decision_cost)}",
            f"{verb} {entry.moved_units} units, load now {entry.load_after}/{p.max_capacity}",
            f"Remaining: supply {entry.remaining_supply}, demand {entry.remaining_demand}",
            "",
        ]

    if outcome.status == SolveStatus.COMPLETE:
        status = "COMPLETE - successful termination, no store is waiting for goods"
    else:
        status = ("PARTIAL - overconstrained problem, only a partial solution available "
                  "(all warehouses depleted)")
    lines += [
        "=== Final state ===",
        f"Full path: {_path(outcome.full_path)}",
        f"Status: {status}",
        f"Segments: {len(outcome.segments)}",
        f"Delivered total: {outcome.delivered_total}",
        f"Remaining demand: {outcome.remaining_demand}",
        f"Remaining supply: {outcome.remaining_supply}",
        f"Truck leftover: {outcome.truck_load_final}",
        f"Total path cost: {one_decimal(outcome.total_cost)}",
        f"Total distance: {one_decimal(outcome.total_distance_km)} km",
        f"Total time: {outcome.total_time_min} min",
        f"Total runtime: {outcome.elapsed_runtime:.6f} s",
    ]
    return "\n".join(lines) + "\n"


class SegmentRecord(BaseModel):
    record: Literal["segment"] = "segment"
    step: int
    kind: str
    rule: str
    origin: int
    target: int
    route: List[int]
    moved_units: int
    load_before: int
    load_after: int
    decision_cost: float
    distance_km: float
    time_min: int
    remaining_supply: int
    remaining_demand: int
    delivered_total: int


class SummaryRecord(BaseModel):
    record: Literal["summary"] = "summary"
    status: str
    start_node: int
    initial_load: int
    max_capacity: int
    threshold: float
    segments: int
    total_cost: float
    total_distance_km: float
    total_time_min: int
    delivered_total: int
    remaining_demand: int
    remaining_supply: int
    truck_load_final: int
    full_path: List[int]
    elapsed_seconds: float


StructuredRecord = Annotated[Union[SegmentRecord, SummaryRecord], Field(discriminator="record")]
_RECORD_ADAPTER = TypeAdapter(StructuredRecord)


def summary_record(outcome: SolveOutcome) -> SummaryRecord:
    p = outcome.params
    return SummaryRecord(
        status=outcome.status.value,
        start_node=p.start_node,
        initial_load=p.initial_load,
        max_capacity=p.max_capacity,
        threshold=p.threshold,
        segments=len(outcome.segments),
        total_cost=outcome.total_cost,
        total_distance_km=outcome.total_distance_km,
        total_time_min=outcome.total_time_min,
        delivered_total=outcome.delivered_total,
        remaining_demand=outcome.remaining_demand,
        remaining_supply=outcome.remaining_supply,
        truck_load_final=outcome.truck_load_final,
        full_path=list(outcome.full_path),
        elapsed_seconds=outcome.elapsed_runtime,
    )


def render_structured(outcome: SolveOutcome) -> str:
    """JSON Lines: one record per segment, then one summary record."""
    records = [
        SegmentRecord(
            step=s.step,
            kind=s.kind.value,
            rule=s.rule.value,
            origin=s.origin,
            target=s.target,
            route=list(s.route.nodes),
            moved_units=s.moved_units,
            load_before=s.load_before,
            load_after=s.load_after,
            decision_cost=s.decision_cost,
            distance_km=s.route.total_distance_km,
            time_min=s.route.total_time_min,
            remaining_supply=s.remaining_supply,
            remaining_demand=s.remaining_demand,
            delivered_total=s.delivered_total,
        )
        for s in outcome.segments
    ]
    records.append(summary_record(outcome))
    return "".join(record.model_dump_json() + "\n" for record in records)


def parse_structured(text: str) -> Tuple[List[SegmentRecord], SummaryRecord]:
    segments: List[SegmentRecord] = []
    summary = None
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = _RECORD_ADAPTER.validate_json(line)
        except ValidationError as e:
            raise StructuredOutputError(e.errors()[0]["msg"], line=number) from e
        if isinstance(record, SummaryRecord):
            summary = record
        else:
            segments.append(record)
    if summary is None:
        raise StructuredOutputError("has no summary record")
    return segments, summary


def render_solution_dot(graph: TransportGraph, outcome: SolveOutcome) -> str:
    """Instance DOT with every traversed edge annotated for visualizers."""
    traversals: Counter = Counter()
    kinds: Dict[Tuple[int, int], List[str]] = defaultdict(list)
    for segment in outcome.segments:
        for key in segment.route.edge_keys():
            traversals[key] += 1
            if segment.kind.value not in kinds[key]:
                kinds[key].append(segment.kind.value)

    annotations = {
        key: {
            "traversals": count,
            "segment_kinds": ",".join(kinds[key]),
            "color": "red",
            "penwidth": 2,
        }
        for key, count in traversals.items()
    }
    return emit_dot(graph, edge_annotations=annotations)
