# analysis.py v1.1.0
"""Capacity and threshold sweeps over one fixed instance, for cost estimation."""
import io
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import pandas as pd
from pydantic import ValidationError
from rich.table import Table

from utils.model.errors import HaulError
from utils.model.model import TransportGraph
from utils.routing.router import SolverParams, SolveStatus, solve

log = logging.getLogger(__name__)

CSV_COLUMNS = ["capacity", "threshold", "segment_count", "total_cost", "delivered", "status", "error"]


@dataclass(frozen=True)
class SweepRow:
    capacity: int
    threshold: float
    segment_count: Optional[int] = None
    total_cost: Optional[float] = None
    delivered: Optional[int] = None
    status: Optional[SolveStatus] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _run_row(graph: TransportGraph, base: SolverParams, capacity: int, threshold: float) -> SweepRow:
    try:
        params = SolverParams(**{**base.model_dump(), "max_capacity": capacity,
                                 "threshold": threshold})
        outcome = solve(graph, params)
    except ValidationError as exc:
        message = "; ".join(err["msg"] for err in exc.errors())
        log.warning("Sweep row capacity=%s threshold=%s rejected: %s", capacity, threshold, message)
        return SweepRow(capacity=capacity, threshold=threshold, error=message)
    except HaulError as exc:
        log.warning("Sweep row capacity=%s threshold=%s failed: %s", capacity, threshold, exc)
        return SweepRow(capacity=capacity, threshold=threshold, error=str(exc))
    return SweepRow(
        capacity=capacity,
        threshold=threshold,
        segment_count=len(outcome.segments),
        total_cost=outcome.total_cost,
        delivered=outcome.delivered_total,
        status=outcome.status,
    )


def _run_rows(graph: TransportGraph, base: SolverParams,
              settings: List[Tuple[int, float]], workers: int) -> List[SweepRow]:
    if workers <= 1 or len(settings) <= 1:
        return [_run_row(graph, base, c, t) for c, t in settings]
    # rows only read the shared graph; map() keeps input order
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: _run_row(graph, base, *s), settings))


def sweep(graph: TransportGraph, capacities: Iterable[int], base: SolverParams,
          workers: int = 1) -> List[SweepRow]:
    """Solve once per capacity (ascending); other parameters come from base."""
    capacities = sorted(capacities)
    if not capacities:
        raise ValueError("capacity sweep needs at least one capacity")
    return _run_rows(graph, base, [(c, base.threshold) for c in capacities], workers)


def sweep_thresholds(graph: TransportGraph, thresholds: Iterable[float], base: SolverParams,
                     workers: int = 1) -> List[SweepRow]:
    thresholds = sorted(thresholds)
    if not thresholds:
        raise ValueError("threshold sweep needs at least one threshold")
    return _run_rows(graph, base, [(base.max_capacity, t) for t in thresholds], workers)


def rows_to_frame(rows: Iterable[SweepRow]) -> pd.DataFrame:
    frame = pd.DataFrame(
        [
            {
                "capacity": row.capacity,
                "threshold": row.threshold,
                "segment_count": row.segment_count,
                "total_cost": row.total_cost,
                "delivered": row.delivered,
                "status": row.status.value if row.status else "error",
                "error": row.error,
            }
            for row in rows
        ],
        columns=CSV_COLUMNS,
    )
    return frame.astype({
        "capacity": "int64",
        "threshold": "float64",
        "segment_count": "Int64",
        "total_cost": "float64",
        "delivered": "Int64",
        "status": "object",
        "error": "object",
    })


def emit_csv(rows: Iterable[SweepRow]) -> str:
    return rows_to_frame(rows).to_csv(index=False, lineterminator="\n")


def parse_csv(text: str) -> List[SweepRow]:
    frame = pd.read_csv(io.StringIO(text), dtype={"status": str, "error": str},
                        keep_default_na=False)
    rows = []
    for record in frame.to_dict(orient="records"):
        failed = record["status"] == "error"
        rows.append(SweepRow(
            capacity=int(record["capacity"]),
            threshold=float(record["threshold"]),
            segment_count=None if failed else int(record["segment_count"]),
            total_cost=None if failed else float(record["total_cost"]),
            delivered=None if failed else int(record["delivered"]),
            status=None if failed else SolveStatus(record["status"]),
            error=record["error"] or None,
        ))
    return rows


def marginal_value(rows: List[SweepRow]) -> List[Tuple[int, float]]:
    """Cost saved per added capacity unit between consecutive successful rows."""
    usable = [row for row in rows if row.ok]
    if len(usable) < 2:
        raise ValueError("marginal value needs at least two successful rows")
    values = []
    for lower, upper in zip(usable, usable[1:]):
        delta = upper.capacity - lower.capacity
        if delta == 0:
            continue
        values.append((delta, (lower.total_cost - upper.total_cost) / delta))
    return values


def sweep_table(rows: List[SweepRow], title: str = "Capacity sweep") -> Table:
    table = Table(title=title)
    for column in ("Truck capacity", "T", "Path segments", "Overall path cost", "Delivered", "Status"):
        table.add_column(column, justify="right" if column != "Status" else "left")
    for row in rows:
        if row.ok:
            table.add_row(str(row.capacity), f"{row.threshold:g}", str(row.segment_count),
                          f"{row.total_cost:.1f}", str(row.delivered), row.status.value)
        else:
            table.add_row(str(row.capacity), f"{row.threshold:g}", "-", "-", "-",
                          f"error: {row.error}")
    return table
