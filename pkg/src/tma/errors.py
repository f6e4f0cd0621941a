"""Exception and warning types shared across the package."""


class TmaError(Exception):
    """Base class for all errors raised by this package."""


class EmptyChord(TmaError):
    """An operation that needs at least one pitch class got an empty chord."""


class MalformedMidi(TmaError):
    """The input is not a well-formed Standard MIDI File."""


class UnsupportedFormat(TmaError):
    """The MIDI file uses a feature outside formats 0/1 with PPQ timing."""


class SchemaViolation(TmaError):
    """A JSON document does not conform to the expected schema.

    ``pointer`` locates the offending value as a JSON pointer string.
    """

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer


class DimensionOutOfRange(TmaError):
    """A homological dimension outside the complex's range was requested."""


class IndexOutOfRange(TmaError):
    """A chord/event index outside the fragment was requested."""


class RadiusTooLarge(TmaError):
    """The window radius does not fit inside the chord sequence."""


class InvalidFiltration(TmaError):
    """A filtered complex has a face appearing later than one of its cofaces."""


class DimensionMismatch(TmaError):
    """Persistence diagrams of different homology dimensions were compared."""


class MalformedMatrix(TmaError):
    """A distance matrix is not symmetric, nonnegative and zero-diagonal."""


class DanglingNoteOnWarning(UserWarning):
    """A MIDI note-on had no matching note-off and was closed at track end."""
