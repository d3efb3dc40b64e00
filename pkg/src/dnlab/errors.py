class DNLabError(Exception):
    """Base class for workbench errors."""


class PreconditionError(DNLabError, ValueError):
    pass


class GuardError(DNLabError, ValueError):
    """A size or bound guard was exceeded."""


class HasseError(DNLabError, ValueError):
    pass


class InternalConsistencyError(DNLabError, AssertionError):
    """Two independent routes to the same quantity disagreed."""
