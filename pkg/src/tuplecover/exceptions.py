"""Exception types shared by every module."""


class ValidationError(ValueError):
    """A precondition on the arguments was violated."""


class MalformedInputError(ValidationError):
    """The input could not have been produced by the matching encoder."""


class InvariantViolation(RuntimeError):
    """An internal guarantee failed at runtime (a bug, or an uncertified parameter)."""
