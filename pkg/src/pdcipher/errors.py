"""Exception hierarchy for the cipher package."""


class CipherError(Exception):
    """Base class for all errors raised by this package."""


class InvalidKeyError(CipherError):
    """A secret key is malformed, non-finite, or outside the valid range."""


class IntegrationDivergenceError(CipherError):
    """The chaotic trajectory left the finite range; the key region is unusable."""


class PgmFormatError(CipherError):
    """A PGM file could not be parsed.

    Carries the byte offset at which parsing failed when it is known.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset
