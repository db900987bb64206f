"""Exception hierarchy shared by the library and the command line."""


class EtsurfError(Exception):
    """Base class for all errors raised by this package."""


class InputError(EtsurfError, ValueError):
    """Malformed or semantically invalid input (exit code 2 on the CLI)."""


class NotCubicError(InputError):
    pass


class DisconnectedGraphError(InputError):
    pass


class SurfaceError(InputError):
    """A face list or cycle family violates a simplicial-surface condition."""


class CeilingExceeded(EtsurfError, RuntimeError):
    """A configured resource ceiling would be exceeded (exit code 3 on the CLI)."""
