def _exception_from_packed_args(exception_cls, args=None, kwargs=None):
    # Only positional arguments can be provided for __reduce__, so errors
    # that accept kwargs alone are rebuilt through this helper.
    if args is None:
        args = ()
    if kwargs is None:
        kwargs = {}
    return exception_cls(*args, **kwargs)


class BaseError(Exception):
    """The base exception class for errors.

    :ivar msg: The descriptive message associated with the error.
    """

    fmt = "An unspecified error occurred"

    def __init__(self, **kwargs):
        msg = self.fmt.format(**kwargs)
        Exception.__init__(self, msg)
        self.kwargs = kwargs

    def __reduce__(self):
        return _exception_from_packed_args, (self.__class__, None, self.kwargs)

    def __getattr__(self, name):
        kwargs = self.__dict__.get("kwargs", {})
        if name in kwargs:
            return kwargs[name]
        raise AttributeError(name)

    @property
    def category(self) -> str:
        """Machine-parsable error category (the class name)."""
        return self.__class__.__name__


# se3


class TooFewPairs(BaseError):
    fmt = "Calibration needs at least {min_pairs} pose pairs, got {n_pairs}"


class DegenerateInput(BaseError):
    """Candidate calibration rotations disagree, usually from bad pairing."""

    fmt = (
        "Candidate rotations spread {spread_deg:.3f} deg exceeds the allowed "
        "{max_spread_deg:.3f} deg (pair {pair})"
    )


class OutOfRange(BaseError):
    fmt = "{name}={value} is outside [{low}, {high}]"


# stream


class DuplicateId(BaseError):
    fmt = "Stream id '{stream_id}' is already registered"


class SessionAlreadyStarted(BaseError):
    fmt = "Cannot {action}: session already started"


class SessionNotStarted(BaseError):
    fmt = "Cannot {action}: session not started"


class UnknownStream(BaseError):
    fmt = "Unknown stream '{stream_id}'"


class NonMonotonicTimestamp(BaseError):
    fmt = (
        "Stream '{stream_id}' timestamp {timestamp} is not after the last "
        "accepted timestamp {last}"
    )


class KindMismatch(BaseError):
    fmt = "Stream '{stream_id}' expects {expected} payloads, got {got}"


# retarget


class ParseError(BaseError):
    fmt = "Line {line}: {reason}"


class LimitOrderError(BaseError):
    fmt = "Joint '{joint}' lower limit {lower} is not below upper limit {upper}"


class DuplicateJoint(BaseError):
    fmt = "Joint '{joint}' is declared more than once"


class DegenerateRange(BaseError):
    fmt = (
        "Glove channel {channel} reads {value} in both the open and closed "
        "calibration frames"
    )


class SourceIndexOutOfRange(BaseError):
    fmt = "Source index {index} is outside a glove frame of length {length}"


# store


class InvalidRoster(BaseError):
    fmt = "Invalid stream roster: {reason}"


class IoError(BaseError):
    fmt = "I/O failure on {path}: {reason}"


class TickOrderError(BaseError):
    fmt = "Tick {tick_index} is not after the last written tick {last}"


class SizeMismatch(BaseError):
    fmt = (
        "Stream '{stream_id}' payload has size {got}, roster expects "
        "{expected}"
    )


class WriterClosed(BaseError):
    fmt = "Episode writer for {path} is already finalized"


class ChecksumMismatch(BaseError):
    fmt = (
        "Checksum mismatch in chunk {chunk} (body offset {offset}): stored "
        "{stored:#010x}, computed {computed:#010x}"
    )


class FormatVersionUnsupported(BaseError):
    fmt = "Unsupported chunk format in {chunk}: {reason}"


class NoSuchTask(BaseError):
    fmt = "No episodes found for task '{task_name}'"


# replay


class InvalidChunk(BaseError):
    fmt = "Invalid action chunk: {reason}"


class InvalidEnvelope(BaseError):
    fmt = "Invalid safety envelope: {reason}"


class SafetyAbort(BaseError):
    fmt = "Safety abort at step {step}: {reason} ({detail})"


class SeamViolation(BaseError):
    fmt = "Chunk seam violates {reason} limit ({detail})"


class GapInActions(BaseError):
    fmt = "Gap in action stream '{stream_id}' at tick {tick_index}"


# sim


class InvalidScenario(BaseError):
    fmt = "Invalid scenario: {reason}"
