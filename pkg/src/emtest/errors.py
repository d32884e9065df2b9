"""Exception hierarchy shared by all emtest modules.

Two broad families matter to callers (and to the CLI exit-code mapping):
``FileError`` for anything wrong with on-disk data, ``DomainError`` for
numerically invalid requests.
"""


class EmError(Exception):
    """Base class for every error raised by this package."""


class FileError(EmError):
    """I/O failures and on-disk format violations."""


class IoFailure(FileError):
    """A filesystem operation failed (missing path, unreadable file, ...)."""


class FormatViolation(FileError):
    """On-disk data does not conform to the documented record/scene format."""


class DomainError(EmError):
    """An argument is outside the numeric domain of the operation."""


class BadArgument(DomainError):
    """Generic invalid argument (wrong sign, empty list, bad count, ...)."""


class BadEdge(DomainError):
    """Cube edge length must be positive."""


class BadRadius(DomainError):
    """Sphere radius must be positive."""


class BadFrequency(DomainError):
    """Frequency must be positive."""


class BadGeometry(DomainError):
    """Inconsistent geometric configuration (e.g. source inside the sensor)."""


class BadDuration(DomainError):
    """Record duration must be positive."""


class TooFewMics(DomainError):
    """Spherical arrays need at least 4 microphones."""


class ApertureOnCube(DomainError):
    """Hemisphere/cap shading is defined for spherical arrays only."""


class NoActiveMics(DomainError):
    """Every microphone of the array is inactive."""


class EvaluationAtSource(DomainError):
    """Spherical-wave pressure requested at the source singularity."""


class FrequencyMismatch(DomainError):
    """Source frequency differs from the analysis frequency."""


class EmptyGrid(DomainError):
    """A frequency or focus grid must contain at least one point."""


class ChannelMismatch(DomainError):
    """Record channel count does not match the array microphone count."""


class UndersampledStimulus(DomainError):
    """Sample rate below 16x the highest stimulus frequency."""


class FocusOutsideSphere(DomainError):
    """Virtual focus targets must lie strictly inside the array sphere."""


class BadTau0(DomainError):
    """Base delay too small to keep all per-microphone delays nonnegative."""


class ZeroField(DomainError):
    """Image normalization impossible: the response is zero everywhere."""


class WindowTooShort(DomainError):
    """Series does not cover the minimum number of tone periods."""


class NyquistViolation(DomainError):
    """Requested harmonic order exceeds the Nyquist frequency."""


class ZeroFundamental(DomainError):
    """THD undefined: fundamental amplitude is (numerically) zero."""
