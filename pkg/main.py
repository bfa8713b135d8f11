# main.py v2.0.0
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from utils.commands.cli_config import CliConfig
from utils.commands.generate.generate import generate_command
from utils.commands.help.help import help_command
from utils.commands.solve.solve import solve_command
from utils.commands.sweep.sweep import sweep_command
from utils.commands.validate.validate import validate_command
from utils.tools.haulsim_tools import complain, setup_logging

log = logging.getLogger("haulsim")

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "config" / "config.json"

BUILTIN_DEFAULTS: Dict[str, Any] = {
    "generator": {
        "total_nodes": 12,
        "max_edges_per_node": 2,
        "num_stores": 4,
        "num_warehouses": 2,
        "total_supply": 100,
        "total_demand": 90,
        "map_size": 1000.0,
        "velocity_min": 40,
        "velocity_max": 100,
        "seed": 0,
    },
    "solver": {
        "start_node": 0,
        "initial_load": 0,
        "max_capacity": 20,
        "threshold": 0.5,
    },
    "sweep": {
        "capacities": [10, 15, 20, 22, 23],
        "workers": 1,
    },
    "log_level": "INFO",
}


class Config:
    def __init__(self, config_path: Path = DEFAULT_CONFIG_PATH):
        self.config_path = Path(config_path)
        self._last_modified = 0.0
        self._config_cache: Dict[str, Any] = {}

    def _load_config(self) -> None:
        """Load configuration if file has been modified; a missing file means built-in defaults."""
        if not self.config_path.exists():
            self._config_cache = {}
            return
        current_mtime = os.path.getmtime(self.config_path)
        if current_mtime > self._last_modified:
            with open(self.config_path, "r", encoding="utf-8") as f:
                self._config_cache = json.load(f)
            self._last_modified = current_mtime
            log.debug("Loaded %s", self.config_path)

    def _get_config_value(self, key: str) -> Any:
        """Get a config value, reloading if necessary."""
        self._load_config()
        default = BUILTIN_DEFAULTS[key]
        value = self._config_cache.get(key, default)
        if isinstance(default, dict):
            if not isinstance(value, dict):
                raise TypeError(f"section '{key}' must be a JSON object, "
                                f"got {type(value).__name__}")
            return {**default, **value}
        return value

    @property
    def generator_defaults(self) -> dict:
        return self._get_config_value("generator")

    @property
    def solver_defaults(self) -> dict:
        return self._get_config_value("solver")

    @property
    def sweep_capacities(self) -> List[int]:
        return list(self._get_config_value("sweep")["capacities"])

    @property
    def sweep_workers(self) -> int:
        return int(self._get_config_value("sweep")["workers"])

    @property
    def log_level(self) -> str:
        return str(self._get_config_value("log_level"))


GENERATOR_FLAGS = ("total_nodes", "max_edges_per_node", "num_stores", "num_warehouses",
                   "total_supply", "total_demand", "map_size", "velocity_min", "velocity_max",
                   "seed")
SOLVER_FLAGS = {"start_node": "start_node", "initial_load": "initial_load",
                "capacity": "max_capacity", "threshold": "threshold"}


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haulsim",
        description="Greedy single-truck routing on generated transportation instances.")
    parser.add_argument("--config", type=Path, default=DEFAULT_CONFIG_PATH,
                        help="JSON file with default parameters (default: %(default)s)")
    parser.add_argument("--verbose", action="store_true", help="log every routing decision")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="write a seeded instance as DOT")
    generate.add_argument("--out", type=Path, help="output DOT file")
    generate.add_argument("--count", type=int, default=1,
                          help="number of instances, with consecutive seeds")
    for flag in GENERATOR_FLAGS:
        kind = float if flag == "map_size" else int
        generate.add_argument(f"--{flag.replace('_', '-')}", dest=flag, type=kind)

    solve = commands.add_parser("solve", help="route the truck over an instance")
    sweep = commands.add_parser("sweep", help="solve repeatedly over capacities or thresholds")
    for sub in (solve, sweep):
        sub.add_argument("--instance", type=Path, help="instance DOT file")
        sub.add_argument("--capacity", type=int, help="truck max capacity")
        sub.add_argument("--threshold", type=float, help="resupply threshold T in [0, 1]")
        sub.add_argument("--start-node", dest="start_node", type=int)
        sub.add_argument("--initial-load", dest="initial_load", type=int)
    solve.add_argument("--log", type=Path, help="human-readable log (default: <instance>.log)")
    solve.add_argument("--structured", type=Path,
                       help="JSON Lines records (default: <instance>.jsonl)")
    solve.add_argument("--solution-dot", dest="solution_dot", type=Path,
                       help="annotated DOT (default: <instance>.solution.dot)")
    sweep.add_argument("--capacities", type=_int_list, help="e.g. 10,15,20,22,23")
    sweep.add_argument("--thresholds", type=_float_list,
                       help="sweep T at fixed capacity instead, e.g. 0.25,0.5,0.75")
    sweep.add_argument("--workers", type=int, help="rows solved in parallel")
    sweep.add_argument("--csv", type=Path, help="CSV table (default: <instance>.sweep.csv)")

    validate = commands.add_parser("validate", help="check an instance against every invariant")
    validate.add_argument("--instance", type=Path, help="instance DOT file")

    commands.add_parser("help", help="show the command overview")
    return parser


def _flags(args: argparse.Namespace, names) -> Dict[str, Any]:
    return {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}


def build_cli_config(args: argparse.Namespace, config: Config) -> CliConfig:
    """Merge flags over config file values over built-in defaults."""
    solver = config.solver_defaults
    solver.update({SOLVER_FLAGS[flag]: value
                   for flag, value in _flags(args, SOLVER_FLAGS).items()})
    capacities = getattr(args, "capacities", None)
    workers = getattr(args, "workers", None)
    return CliConfig(
        command=args.command,
        instance=getattr(args, "instance", None),
        out=getattr(args, "out", None),
        count=getattr(args, "count", 1),
        log=getattr(args, "log", None),
        structured=getattr(args, "structured", None),
        solution_dot=getattr(args, "solution_dot", None),
        csv=getattr(args, "csv", None),
        generator={**config.generator_defaults, **_flags(args, GENERATOR_FLAGS)},
        solver=solver,
        capacities=config.sweep_capacities if capacities is None else capacities,
        thresholds=getattr(args, "thresholds", None) or [],
        workers=config.sweep_workers if workers is None else workers,
        verbose=args.verbose,
        log_level="DEBUG" if args.verbose else config.log_level,
    )


COMMANDS: Dict[str, Callable[[CliConfig], int]] = {
    "generate": generate_command.run,
    "solve": solve_command.run,
    "sweep": sweep_command.run,
    "validate": validate_command.run,
    "help": help_command,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = Config(args.config)
    try:
        cli_config = build_cli_config(args, config)
    except ValidationError as e:
        for error in e.errors():
            where = ".".join(str(part) for part in error["loc"])
            complain(f"Invalid arguments{f' ({where})' if where else ''}: {error['msg']}")
        return 1
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as e:
        complain(f"Cannot read configuration {config.config_path}: {e}")
        return 1

    setup_logging(cli_config.log_level)
    log.debug("Running %s with %s", cli_config.command, cli_config)
    return COMMANDS[cli_config.command](cli_config)


if __name__ == "__main__":
    sys.exit(main())
