"""Exception hierarchy shared across the engine."""


class WreathGameError(Exception):
    """Base class for all engine errors."""


class InvalidVertexError(WreathGameError):
    """A vertex id does not belong to the graph it was used with."""


class GeodesicNotFoundError(WreathGameError):
    """No geodesic of the requested length exists within the search bound."""


class GraphTooLargeError(WreathGameError):
    """A finite materialization exceeded the supported vertex bound."""


class GraphTooSmallError(WreathGameError):
    """The lamp graph is too small for the requested plan."""


class GroupMismatchError(WreathGameError):
    """Group elements from different groups were combined."""


class StreetmapMismatchError(WreathGameError):
    """Boards over different streetmaps were combined."""


class PlanMismatchError(WreathGameError):
    """A board or argument does not match the strategy plan."""


class IllegalMoveError(WreathGameError):
    """A move violating the rules, with a machine-readable reason.

    Reasons: not-adjacent | outside-area | wrong-phase | speed-exhausted
    | too-far.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class InvariantViolationError(WreathGameError):
    """An internal invariant of a strategy or engine was broken."""


class StrategyFaultError(WreathGameError):
    """A strategy violated its callback contract."""


class ConfigError(WreathGameError):
    """A run configuration failed validation."""
