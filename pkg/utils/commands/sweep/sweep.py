# sweep.py v1.1.0
import logging

from utils.analysis.analysis import emit_csv, sweep, sweep_table, sweep_thresholds
from utils.commands.cli_config import CliConfig
from utils.commands.solve.solve import EXIT_FAILURE, EXIT_OK, load_instance, report_failure
from utils.model.errors import HaulError
from utils.tools.haulsim_tools import console

log = logging.getLogger(__name__)


class SweepCommand:
    """Solve one instance repeatedly; failing rows are reported in the table, not as exit codes."""

    def run(self, config: CliConfig) -> int:
        try:
            graph = load_instance(config)
            if config.thresholds:
                rows = sweep_thresholds(graph, config.thresholds, config.solver, config.workers)
                title = f"Threshold sweep (capacity {config.solver.max_capacity})"
            else:
                rows = sweep(graph, config.capacities, config.solver, config.workers)
                title = f"Capacity sweep (T={config.solver.threshold:g})"
            target = config.output_path(config.csv, ".sweep.csv")
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(emit_csv(rows), encoding="utf-8")
        except (HaulError, OSError, ValueError) as e:
            report_failure("Sweep", e)
            return EXIT_FAILURE

        console.print(sweep_table(rows, title=title))
        failed = sum(1 for row in rows if not row.ok)
        if failed:
            log.warning("%d of %d sweep rows failed", failed, len(rows))
        log.info("Wrote %s", target)
        return EXIT_OK


sweep_command = SweepCommand()
