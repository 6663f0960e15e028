"""
Exception hierarchy for the parking planner.
"""

from typing import Optional


class ParkingPlannerError(Exception):
    """Base exception for parking planner errors."""
    pass


class ScenarioError(ParkingPlannerError):
    """
    Raised when a scenario file cannot be read or parsed.

    Attributes:
        source: File the scenario came from, if any.
        line: 1-based line of the problem, if known.
        column: 1-based column of the problem, if known.
    """

    def __init__(
        self,
        message: str,
        source: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None
    ) -> None:
        self.source = source
        self.line = line
        self.column = column

        location = ""
        if source is not None:
            location = source
            if line is not None:
                location += f":{line}"
                if column is not None:
                    location += f":{column}"
            location += ": "
        super().__init__(f"{location}{message}")


class InvalidScenarioError(ScenarioError):
    """Raised when a scenario or car violates one of its invariants."""
    pass


class IndexEmptyError(ParkingPlannerError):
    """Raised when a nearest-neighbor query runs on an empty index."""
    pass


class ConfigurationError(ParkingPlannerError):
    """Raised when planner or benchmark settings are invalid."""
    pass
