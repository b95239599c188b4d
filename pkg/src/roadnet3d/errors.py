"""Exception hierarchy shared by every stage of the road compiler."""


class RoadNetError(Exception):
    """Base class. ``entity`` names the offending road/junction/region when known."""

    def __init__(self, message, entity=None):
        if entity is not None:
            message = f"{message} [{entity}]"
        super().__init__(message)
        self.entity = entity


class InputError(RoadNetError):
    pass


class InvalidParams(InputError):
    pass


class DegeneratePolyline(InputError):
    pass


class DegenerateAxis(DegeneratePolyline):
    pass


class DegenerateSpan(RoadNetError):
    pass


class FormatError(InputError):
    pass


class MissingGeoreference(FormatError):
    pass


class OutOfBounds(RoadNetError):
    pass


class NetworkError(RoadNetError):
    pass


class OffsetCollapse(NetworkError):
    pass


class NoFilletExists(NetworkError):
    pass


class NonConvexIntersection(NetworkError):
    pass


class LaneOverflow(NetworkError):
    pass


class InfeasibleFit(RoadNetError):
    pass
