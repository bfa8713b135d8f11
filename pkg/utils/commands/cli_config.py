# cli_config.py v1.0.1
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from utils.generator.generator import GeneratorParams
from utils.routing.router import SolverParams

Command = Literal["generate", "solve", "sweep", "validate", "help"]


class CliConfig(BaseModel):
    """Everything one command invocation needs, merged from flags, config file and defaults."""

    model_config = ConfigDict(frozen=True)

    command: Command
    instance: Optional[Path] = None
    out: Optional[Path] = None
    count: int = Field(1, ge=1)
    log: Optional[Path] = None
    structured: Optional[Path] = None
    solution_dot: Optional[Path] = None
    csv: Optional[Path] = None
    generator: GeneratorParams = GeneratorParams()
    solver: SolverParams = SolverParams()
    capacities: List[int] = Field(default_factory=list)
    thresholds: List[float] = Field(default_factory=list)
    workers: int = Field(1, ge=1)
    verbose: bool = False
    log_level: str = "INFO"

    @model_validator(mode="after")
    def _check_required(self) -> "CliConfig":
        if self.command in ("solve", "sweep", "validate") and self.instance is None:
            raise ValueError(f"'{self.command}' needs --instance")
        if self.command == "generate" and self.out is None:
            raise ValueError("'generate' needs --out")
        if self.command == "sweep" and not (self.capacities or self.thresholds):
            raise ValueError("'sweep' needs a non-empty --capacities or --thresholds list")
        return self

    def output_path(self, explicit: Optional[Path], suffix: str) -> Path:
        """Explicit output path, or one derived from the instance file name."""
        if explicit is not None:
            return explicit
        return self.instance.with_suffix(suffix)
