"""Exception hierarchy shared by every module of the package."""


class FuzzError(Exception):
    """Base class for all errors raised by typenfuzzy."""


class ArgumentError(FuzzError, ValueError):
    pass


class DomainError(FuzzError):
    """An input lies outside the declared domain of a membership function."""


class ShapeError(FuzzError):
    """A shape produced a degree outside [0, 1]."""


class InvalidShape(FuzzError, ValueError):
    """Shape parameters violate their invariants."""


class InconsistentStack(FuzzError):
    """A level of a membership stack rejected a support point produced below it."""


class LevelError(FuzzError):
    pass


class NotInSupport(FuzzError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class PartitionError(FuzzError):
    """A crisp world is not a disjoint cover of its outcome space."""


class CoverageError(FuzzError):
    """An outcome of a fuzzy world lands in no member set."""


class EmptyLog(FuzzError):
    pass


class SpecError(FuzzError):
    pass
