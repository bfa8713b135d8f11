# validate.py v1.0.2
from utils.commands.cli_config import CliConfig
from utils.graphviz.graphviz_io import parse_dot
from utils.model.errors import HaulError
from utils.model.model import validate
from utils.tools.haulsim_tools import complain, say


class ValidateCommand:
    def run(self, config: CliConfig) -> int:
        try:
            graph = parse_dot(config.instance.read_text(encoding="utf-8"), check=False)
        except (HaulError, OSError) as e:
            complain(f"{config.instance}: {e}")
            return 1

        violations = validate(graph)
        if not violations:
            say(f"{config.instance}: valid ({len(graph.nodes)} nodes, {len(graph.edges)} edges)",
                style="green")
            return 0
        complain(f"{config.instance}: {len(violations)} violation(s)")
        for violation in violations:
            complain(f"  - {violation}")
        return 1


validate_command = ValidateCommand()
