"""Exception hierarchy"""


class HotsError(Exception):
    """Base class for all hots errors"""


class InvalidInputError(HotsError, ValueError):
    """Bad arguments, dimension mismatches, malformed files or size guards"""


class InvariantViolation(HotsError, AssertionError):
    """A proven inequality or closure property failed numerically"""


def check_invariant(condition: bool, message: str) -> None:
    """Raise InvariantViolation unless condition holds"""
    if not condition:
        raise InvariantViolation(message)
