"""Exception types shared across the link simulator."""


class LinkError(Exception):
    """Base class for all simulator errors."""


class BadLength(LinkError):
    """Input length violates a stage's framing/alignment contract."""


class ZeroInverse(LinkError):
    """Multiplicative inverse of the zero field element requested."""


class SingularGain(LinkError):
    """Channel gain too close to zero to equalize against."""


class UnsupportedFormat(LinkError):
    """WAV file is valid RIFF but not 16-bit PCM."""


class CorruptHeader(LinkError):
    """WAV file header is malformed or inconsistent with the payload."""


class UsageError(LinkError):
    """Command line arguments are invalid."""
