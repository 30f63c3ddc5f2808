"""Exception types shared across the package."""


class InvalidSpecError(ValueError):
    """A label or legacy parameter tuple does not name an existing group."""


class VerificationError(RuntimeError):
    """An internal consistency check failed.

    Raised when a computed group disagrees with a proven structural fact
    (wrong order, missing normal-form generator, ...). Seeing one means a bug.
    """


class GroupTooLargeError(RuntimeError):
    """A closure or search exceeded its configured element cap."""
