# haulsim_tools.py v1.1.0
import logging

from rich.console import Console
from rich.logging import RichHandler

console = Console()
err_console = Console(stderr=True)

LOGO_COLOURS = ("#8700ff", "#875fd7", "#8787d7", "#8787ff", "#87afff", "#afafff")
LOGO = (
    "██╗  ██╗ █████╗ ██╗   ██╗██╗     ███████╗██╗███╗   ███╗",
    "██║  ██║██╔══██╗██║   ██║██║     ██╔════╝██║████╗ ████║",
    "███████║███████║██║   ██║██║     ███████╗██║██╔████╔██║",
    "██╔══██║██╔══██║██║   ██║██║     ╚════██║██║██║╚██╔╝██║",
    "██║  ██║██║  ██║╚██████╔╝███████╗███████║██║██║ ╚═╝ ██║",
    "╚═╝  ╚═╝╚═╝  ╚═╝ ╚═════╝ ╚══════╝╚══════╝╚═╝╚═╝     ╚═╝",
)



def print_haulsim_logo():
    console.print()
    for colour, line in zip(LOGO_COLOURS, LOGO):
        console.print(line, style=colour, markup=False, highlight=False)
    console.print()


def setup_logging(level: str = "INFO") -> None:
    """Route library logging through rich; safe to call once per command run."""
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True, show_path=False)],
        force=True,
    )


def say(message: str, style: str = "") -> None:
    console.print(message, style=style or None, markup=False, highlight=False, soft_wrap=True)


def complain(message: str) -> None:
    err_console.print(message, style="bold red", markup=False, highlight=False, soft_wrap=True)
