"""Exception hierarchy for critpath.

Every error carries the exit status the command line reports for it.
"""
from typing import Optional


class CritPathError(Exception):
    """Base class for all critpath errors."""

    exit_code = 1


class ProjectParseError(CritPathError):
    """Malformed project document."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        locus = []
        if line is not None:
            locus.append(f"line {line}")
        if field:
            locus.append(f"field '{field}'")
        prefix = f"{', '.join(locus)}: " if locus else ""
        super().__init__(f"{prefix}{message}")


class EstimateOrderError(CritPathError, ValueError):
    """Three-point estimate violates 0 <= a <= m <= b."""


class NetworkValidationError(CritPathError):
    """Activity list does not form a usable network."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.errors) or "invalid network")


class NodeLookupError(CritPathError, KeyError):
    """Unknown node id."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown node"


class DeadEndError(CritPathError):
    """Random walk reached a node without outgoing arcs that is not the sink."""


class InvalidChromosomeError(CritPathError):
    """Gene sequence is not a source-to-sink path of the network."""


class ResultMismatchError(CritPathError):
    """Schedule result was not computed on the given network."""


class OracleDisagreementError(CritPathError):
    """An engine's duration differs from the brute-force oracle."""

    exit_code = 2

    def __init__(self, engine: str, found, expected):
        self.engine = engine
        self.found = found
        self.expected = expected
        super().__init__(
            f"{engine} engine reported duration {found}, oracle maximum is {expected}"
        )


class EnumerationOverflowError(CritPathError):
    """Path enumeration exceeded its configured bound."""

    exit_code = 3

    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"path enumeration exceeded the bound of {bound} paths (raise --max-paths)")
