from utils.commands.cli_config import CliConfig
from utils.tools.haulsim_tools import print_haulsim_logo, say

HELP_TEXT = """
Available Commands

  generate --out FILE [--count N] [--seed S] [generator flags]
      Write a seeded instance as DOT (N instances with consecutive seeds)
  solve --instance FILE [--capacity C] [--threshold T] [--start-node N] [--initial-load L]
      Route the truck; writes the log, JSON Lines records and an annotated DOT
      exit 0 complete, 2 partial (supply ran out), 1 error
  sweep --instance FILE [--capacities 10,15,20] [--thresholds 0.25,0.5] [--workers N]
      Solve once per capacity (or threshold) and write a CSV table
  validate --instance FILE
      List every broken instance invariant; exit 0 iff none
  help
      Show this help message

Run 'main.py <command> --help' for every flag. Defaults come from config/config.json.
"""


def help_command(config: CliConfig) -> int:
    """Help command handler."""
    print_haulsim_logo()
    say(HELP_TEXT)
    return 0
