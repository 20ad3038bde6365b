"""Exception hierarchy shared across the package.

Every error raised on a user-facing path derives from :class:`QsdcError`,
so callers (notably the command-line front end) can map failure classes to
distinct exit codes without string matching.
"""


class QsdcError(Exception):
    """Base class for all errors raised by this package."""


class ConfigParseError(QsdcError):
    """A config file could not be parsed (syntax, unknown key, bad literal).

    The message always names the offending line number when one exists.
    """


class ValidationError(QsdcError):
    """A structurally valid input violates a documented range or constraint."""


class TimingError(ValidationError):
    """Configured storage time cannot cover the required hold duration."""


class CapacityError(QsdcError):
    """The message needs more pair slots than the session provides."""
