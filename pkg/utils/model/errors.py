# errors.py v1.0.0
from typing import List, Optional


class HaulError(Exception):
    """Base class for every failure raised by the haulsim library."""


class GraphValidationError(HaulError):
    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        summary = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"Invalid transport graph: {summary}{more}")


class DotSyntaxError(HaulError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"DOT syntax error at line {line}, column {column}: {message}")


class DotSchemaError(HaulError):
    def __init__(self, message: str, attribute: Optional[str] = None):
        self.attribute = attribute
        super().__init__(message)


class DisconnectedGraphError(HaulError):
    pass


class UnreachableError(HaulError):
    pass


class NoCandidateError(HaulError):
    """No node of the requested kind satisfies the filter."""


class ContractViolation(HaulError):
    pass


class ProgressError(HaulError):
    """A solver iteration moved no goods."""


class StructuredOutputError(HaulError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"Structured output {where}{message}")
