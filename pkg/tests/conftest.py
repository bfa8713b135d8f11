from pathlib import Path

import pytest

from utils.graphviz.graphviz_io import parse_dot
from utils.model.model import Edge, Node, NodeKind, TransportGraph, travel_minutes

FIXTURES = Path(__file__).parent / "fixtures"
GENERATED_SEED = 1


def pytest_addoption(parser):
    parser.addoption("--update-fixtures", action="store_true", default=False,
                     help="rewrite generator-derived fixtures from the current numpy stream")


@pytest.fixture
def pinned(request):
    """Compare text with a committed fixture; a missing fixture is written and the test skipped."""
    update = request.config.getoption("--update-fixtures")

    def check(name: str, text: str) -> None:
        path = FIXTURES / name
        if update or not path.exists():
            path.write_text(text, encoding="utf-8")
            pytest.skip(f"wrote {path.name}; commit it to pin the generator output")
        assert text == path.read_text(encoding="utf-8")

    return check


@pytest.fixture
def reference_dot_path() -> Path:
    return FIXTURES / "reference.dot"


@pytest.fixture
def reference_dot(reference_dot_path) -> str:
    return reference_dot_path.read_text(encoding="utf-8")


@pytest.fixture
def reference_graph(reference_dot) -> TransportGraph:
    return parse_dot(reference_dot)


def road(a: int, b: int, distance: float, velocity: int) -> Edge:
    return Edge(a, b, distance, travel_minutes(distance, velocity), velocity)


@pytest.fixture
def line_graph() -> TransportGraph:
    """warehouse 0 -- joint 1 -- store 2, 100 km at 60 km/h per leg (cost 200 each)."""
    return TransportGraph(
        nodes=[
            Node(0, NodeKind.WAREHOUSE, 0.0, 0.0, supply=30),
            Node(1, NodeKind.JOINT, 100.0, 0.0),
            Node(2, NodeKind.STORE, 200.0, 0.0, demand=25),
        ],
        edges=[road(0, 1, 100.0, 60), road(1, 2, 100.0, 60)],
    )
