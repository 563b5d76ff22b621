"""Exception types raised across the package."""


class HypermatchError(ValueError):
    pass


class EmptyEdge(HypermatchError):
    pass


class DuplicateEdge(HypermatchError):
    pass


class VertexOutOfRange(HypermatchError):
    pass


class IndexOutOfRange(HypermatchError, IndexError):
    pass


class InfeasiblePoint(HypermatchError):
    """The point violates a vertex constraint or the [0, 1] box."""


class NotReduced(HypermatchError):
    pass


class NotBasic(HypermatchError):
    pass


class InvalidK(HypermatchError):
    pass


class ScheduleUndefinedForSize(HypermatchError):
    pass


class InvalidDiscount(HypermatchError):
    """A discount value outside (0, 1]."""


class AllRatesZero(HypermatchError):
    pass


class DegenerateEqualDiscounts(HypermatchError):
    pass


class OutOfRangeN(HypermatchError):
    pass


class NoFeasibleQ(HypermatchError):
    pass


class InstanceTooLarge(HypermatchError):
    pass


class NotPrime(HypermatchError):
    pass


class TooLarge(HypermatchError):
    pass


class Unsatisfiable(HypermatchError):
    pass


class MalformedFile(HypermatchError):
    pass
