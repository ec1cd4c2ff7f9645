"""
Exception hierarchy for the gapped train track toolkit
"""

from typing import Optional, Tuple

from pydantic import ValidationError


class GapTrackError(Exception):
    """Base class for every error raised by gaptrack"""


class InstanceValidationError(GapTrackError, ValueError):
    """A car, track or instance violates one of its invariants"""

    def __init__(self, message: str, reason: Optional[str] = None):
        super().__init__(message)
        self.reason = reason or "invalid"


class DecodeError(GapTrackError, ValueError):
    """Base class for CarFile / TrackFile decoding failures"""


class MalformedTextError(DecodeError):
    """The text is not a parseable JSON object"""


class SchemaError(DecodeError):
    """The object does not match the file schema (keys, types)"""


class InvariantError(DecodeError):
    """The object matches the schema but violates a domain invariant"""

    def __init__(self, message: str, reason: Optional[str] = None):
        super().__init__(message)
        self.reason = reason or "invalid"


class PhaseCapExceeded(GapTrackError):
    """The fix-it builder ran past its safety cap on resampling phases"""

    def __init__(self, phases: int):
        super().__init__(f"fix-it builder exceeded the phase cap of {phases} phases")
        self.phases = phases


class OracleNodeLimitExceeded(GapTrackError):
    """The exact search hit its node limit without finding any track"""

    def __init__(self, node_limit: int):
        super().__init__(f"exact search explored {node_limit} nodes without finding a track")
        self.node_limit = node_limit


class InfeasibleCellError(GapTrackError):
    """A benchmark cell cannot be generated with the requested parameters"""


def first_error(exc: ValidationError) -> Tuple[str, str]:
    """Return the (type, message) of the first error in a pydantic ValidationError"""
    errors = exc.errors()
    if not errors:
        return "invalid", str(exc)
    error = errors[0]
    message = error.get("msg", str(exc))
    if message.startswith("Value error, "):
        message = message[len("Value error, "):]
    return error.get("type", "invalid"), message


def as_instance_error(exc: ValidationError) -> InstanceValidationError:
    reason, message = first_error(exc)
    return InstanceValidationError(message, reason)
