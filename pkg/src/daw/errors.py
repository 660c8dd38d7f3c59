"""Exception hierarchy shared by every module.

``exit_code`` is what the command line returns when the error escapes a job:
2 for configuration / precondition problems, 3 for size caps.
"""


class DAWError(Exception):
    exit_code = 2


class NonInvertible(DAWError, ArithmeticError):
    pass


class RingMismatch(DAWError, ValueError):
    pass


class NotAField(DAWError, ValueError):
    pass


class SizeMismatch(DAWError, ValueError):
    pass


class GroupMismatch(DAWError, ValueError):
    pass


class InvalidGroup(DAWError, ValueError):
    pass


class NonAbelianGroup(DAWError, ValueError):
    pass


class InfiniteGroup(DAWError, ValueError):
    pass


class FlavorViolation(DAWError, ValueError):
    pass


class SizeCapExceeded(DAWError):
    exit_code = 3


class NotADefect(DAWError, ValueError):
    pass


class HasMissingNode(DAWError, ValueError):
    pass


class NotFound(DAWError, LookupError):
    pass


class NoMaxDiagram(DAWError, ValueError):
    pass


class CharacterNotVanishing(DAWError, ValueError):
    pass


class CharacterIncompatible(DAWError, ValueError):
    pass


class ParamMismatch(DAWError, ValueError):
    pass


class CheckFailed(DAWError, AssertionError):
    """A verified mathematical property did not hold."""

    exit_code = 1
