# generate.py v1.1.0
import logging
from pathlib import Path

from utils.commands.cli_config import CliConfig
from utils.generator.generator import GeneratorParams, generate
from utils.graphviz.graphviz_io import emit_dot
from utils.model.errors import HaulError
from utils.tools.haulsim_tools import complain, say

log = logging.getLogger(__name__)


class GenerateCommand:
    """Write one seeded instance, or a family of them with consecutive seeds."""

    def run(self, config: CliConfig) -> int:
        try:
            for offset in range(config.count):
                params = self._params_for(config, offset)
                target = self._target_for(config.out, config.count, params.seed)
                self._write_instance(params, target)
        except (HaulError, OSError) as e:
            complain(f"Generation failed: {e}")
            return 1
        return 0

    def _params_for(self, config: CliConfig, offset: int) -> GeneratorParams:
        if offset == 0:
            return config.generator
        seed = (config.generator.seed + offset) % 2**64
        return GeneratorParams(**{**config.generator.model_dump(), "seed": seed})

    def _target_for(self, out: Path, count: int, seed: int) -> Path:
        if count == 1:
            return out
        # batch: <stem>_<seed><suffix>
        return out.with_name(f"{out.stem}_{seed}{out.suffix or '.dot'}")

    def _write_instance(self, params: GeneratorParams, target: Path) -> None:
        graph = generate(params)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(emit_dot(graph), encoding="utf-8")
        log.debug("Wrote %s", target)
        say(f"{target}: {len(graph.nodes)} nodes, {len(graph.edges)} edges, "
            f"supply {graph.total_supply}, demand {graph.total_demand}, seed {params.seed}")


generate_command = GenerateCommand()
