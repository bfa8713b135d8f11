# solve.py v1.2.0
import logging

from utils.commands.cli_config import CliConfig
from utils.graphviz.graphviz_io import parse_dot
from utils.model.errors import GraphValidationError, HaulError
from utils.model.model import TransportGraph
from utils.report.report import render_log, render_solution_dot, render_structured
from utils.routing.router import SolveOutcome, SolveStatus, solve
from utils.tools.haulsim_tools import complain, say

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARTIAL = 2


def load_instance(config: CliConfig) -> TransportGraph:
    """Read and validate the instance named by --instance. Raises OSError or HaulError."""
    text = config.instance.read_text(encoding="utf-8")
    return parse_dot(text)


def report_failure(action: str, error: Exception) -> None:
    if isinstance(error, GraphValidationError):
        complain(f"{action} failed: instance breaks {len(error.violations)} invariant(s)")
        for violation in error.violations:
            complain(f"  - {violation}")
    else:
        complain(f"{action} failed: {error}")


class SolveCommand:
    def run(self, config: CliConfig) -> int:
        try:
            graph = load_instance(config)
            outcome = solve(graph, config.solver)
            self._write_outputs(config, graph, outcome)
        except (HaulError, OSError) as e:
            report_failure("Solve", e)
            return EXIT_FAILURE

        self._print_status(outcome)
        return EXIT_OK if outcome.status == SolveStatus.COMPLETE else EXIT_PARTIAL

    def _write_outputs(self, config: CliConfig, graph: TransportGraph,
                       outcome: SolveOutcome) -> None:
        outputs = {
            config.output_path(config.log, ".log"): render_log(outcome),
            config.output_path(config.structured, ".jsonl"): render_structured(outcome),
            config.output_path(config.solution_dot, ".solution.dot"):
                render_solution_dot(graph, outcome),
        }
        for path, text in outputs.items():
            if path.resolve() == config.instance.resolve():
                raise OSError(f"refusing to overwrite the instance file {path}")
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            log.debug("Wrote %s", path)

    def _print_status(self, outcome: SolveOutcome) -> None:
        label = "Complete" if outcome.status == SolveStatus.COMPLETE else "Partial"
        say(f"{label}: delivered {outcome.delivered_total}, "
            f"{len(outcome.segments)} segments, cost {outcome.total_cost:.1f}, "
            f"runtime {outcome.elapsed_runtime:.4f} s",
            style="green" if outcome.status == SolveStatus.COMPLETE else "yellow")


solve_command = SolveCommand()
