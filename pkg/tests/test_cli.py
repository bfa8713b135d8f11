import json
import os

import pytest

from main import Config, main
from utils.analysis.analysis import parse_csv
from utils.graphviz.graphviz_io import emit_dot, parse_dot
from utils.model.model import Node, NodeKind
from utils.report.report import parse_structured


@pytest.fixture
def run(tmp_path):
    config_path = tmp_path / "missing.json"

    def _run(*argv: str) -> int:
        return main(["--config", str(config_path), *argv])

    return _run


@pytest.fixture
def instance(tmp_path, reference_dot):
    path = tmp_path / "reference.dot"
    path.write_text(reference_dot, encoding="utf-8")
    return path


def test_generate_writes_instance(run, tmp_path, capsys):
    out = tmp_path / "inst.dot"
    assert run("generate", "--out", str(out), "--seed", "1") == 0
    graph = parse_dot(out.read_text(encoding="utf-8"))
    assert len(graph.nodes) == 12
    assert "12 nodes" in capsys.readouterr().out


def test_generate_is_deterministic(run, tmp_path):
    first, second = tmp_path / "a.dot", tmp_path / "b.dot"
    assert run("generate", "--out", str(first), "--seed", "9") == 0
    assert run("generate", "--out", str(second), "--seed", "9") == 0
    assert first.read_bytes() == second.read_bytes()


def test_generate_batch_uses_consecutive_seeds(run, tmp_path):
    assert run("generate", "--out", str(tmp_path / "fam.dot"), "--seed", "5", "--count", "3") == 0
    assert sorted(p.name for p in tmp_path.glob("fam_*.dot")) == [
        "fam_5.dot", "fam_6.dot", "fam_7.dot"]


def test_generate_rejects_bad_params(run, tmp_path, capsys):
    out = tmp_path / "bad.dot"
    assert run("generate", "--out", str(out), "--num-stores", "10", "--num-warehouses", "5") == 1
    assert not out.exists()
    assert "exceeds total_nodes" in capsys.readouterr().err


def test_solve_reference(run, instance, tmp_path, reference_dot, capsys):
    assert run("solve", "--instance", str(instance), "--capacity", "20", "--threshold", "0.5") == 0
    assert capsys.readouterr().out.startswith("Complete: delivered 90")
    segments, summary = parse_structured((tmp_path / "reference.jsonl").read_text())
    assert len(segments) == 14 and summary.truck_load_final == 10
    assert (tmp_path / "reference.log").read_text().startswith("=== Routing algorithm log ===")
    assert "traversals=" in (tmp_path / "reference.solution.dot").read_text()
    assert instance.read_text(encoding="utf-8") == reference_dot


def test_solve_partial_exits_2(run, tmp_path, line_graph):
    line_graph.nodes[0] = Node(0, NodeKind.WAREHOUSE, 0.0, 0.0, supply=10)
    path = tmp_path / "short.dot"
    path.write_text(emit_dot(line_graph), encoding="utf-8")
    log_path = tmp_path / "out" / "short.txt"
    assert run("solve", "--instance", str(path), "--log", str(log_path)) == 2
    assert "PARTIAL" in log_path.read_text()


def test_solve_missing_instance(run, tmp_path, capsys):
    assert run("solve", "--instance", str(tmp_path / "nope.dot")) == 1
    assert "Solve failed" in capsys.readouterr().err


def test_solve_requires_instance(run, capsys):
    assert run("solve") == 1
    assert "--instance" in capsys.readouterr().err


def test_sweep_writes_csv(run, instance, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    assert run("sweep", "--instance", str(instance), "--capacities", "10,15,20,22,23",
               "--csv", str(csv_path)) == 0
    rows = parse_csv(csv_path.read_text(encoding="utf-8"))
    assert [row.capacity for row in rows] == [10, 15, 20, 22, 23]
    assert [row.segment_count for row in rows] == [21, 15, 14, 12, 8]


def test_sweep_keeps_going_past_a_bad_row(run, instance, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    assert run("sweep", "--instance", str(instance), "--capacities", "0,20",
               "--csv", str(csv_path)) == 0
    rows = parse_csv(csv_path.read_text(encoding="utf-8"))
    assert not rows[0].ok and rows[1].segment_count == 14


def test_sweep_thresholds(run, instance, tmp_path):
    assert run("sweep", "--instance", str(instance), "--thresholds", "0.25,0.5") == 0
    rows = parse_csv((tmp_path / "reference.sweep.csv").read_text(encoding="utf-8"))
    assert [row.threshold for row in rows] == [0.25, 0.5]


def test_validate_accepts_reference(run, instance):
    assert run("validate", "--instance", str(instance)) == 0


def test_validate_lists_violations(run, tmp_path, reference_dot, capsys):
    path = tmp_path / "corrupt.dot"
    path.write_text(reference_dot.replace("kind=store, x=100.0, y=100.0, supply=0",
                                          "kind=store, x=100.0, y=100.0, supply=7"))
    assert run("validate", "--instance", str(path)) == 1
    assert "store supply nonzero" in capsys.readouterr().err


def test_validate_reports_syntax_position(run, tmp_path, reference_dot, capsys):
    path = tmp_path / "broken.dot"
    path.write_text(reference_dot.replace("0 -- 5 [", "0 -- [", 1))
    assert run("validate", "--instance", str(path)) == 1
    assert "line 15" in capsys.readouterr().err


def test_help(run, capsys):
    assert run("help") == 0
    assert "sweep --instance" in capsys.readouterr().out


def test_config_file_values_apply(tmp_path, instance):
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"sweep": {"capacities": [20, 23]}}))
    assert Config(config_path).sweep_capacities == [20, 23]
    assert Config(config_path).solver_defaults["max_capacity"] == 20
    assert main(["--config", str(config_path), "sweep", "--instance", str(instance)]) == 0
    rows = parse_csv((tmp_path / "reference.sweep.csv").read_text(encoding="utf-8"))
    assert [row.capacity for row in rows] == [20, 23]


def test_config_reloads_when_file_changes(tmp_path):
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({"log_level": "WARNING"}))
    config = Config(config_path)
    assert config.log_level == "WARNING"
    config_path.write_text(json.dumps({"log_level": "DEBUG"}))
    stat = config_path.stat()
    os.utime(config_path, (stat.st_atime, stat.st_mtime + 5))
    assert config.log_level == "DEBUG"


@pytest.mark.parametrize("content", [{"solver": 5}, {"sweep": [10, 20]}, {"sweep": {"capacities": 7}}])
def test_malformed_config_section_exits_1(tmp_path, instance, capsys, content):
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(content))
    assert main(["--config", str(config_path), "sweep", "--instance", str(instance)]) == 1
    assert "Cannot read configuration" in capsys.readouterr().err
