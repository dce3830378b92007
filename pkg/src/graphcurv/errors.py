"""Exception types raised across the package."""


class CurvatureError(ValueError):
    """Base class for all input/contract errors raised by graphcurv."""


class LoopEdge(CurvatureError):
    def __init__(self, vertex):
        super().__init__(f"loop edge at vertex {vertex}")
        self.vertex = vertex


class IdOutOfRange(CurvatureError):
    pass


class TooSmall(CurvatureError):
    pass


class TooLarge(CurvatureError):
    pass


class Disconnected(CurvatureError):
    pass


class IsolatedVertex(CurvatureError):
    pass


class InvalidRotation(CurvatureError):
    pass


class InvalidTessellation(CurvatureError):
    pass


class NotIncident(CurvatureError):
    pass


class NegativeTime(CurvatureError):
    pass


class IdlenessOutOfRange(CurvatureError):
    pass


class SameVertex(CurvatureError):
    pass


class DisconnectedPair(Disconnected):
    pass


class DisconnectedSupports(Disconnected):
    pass


class DegenerateKernel(ArithmeticError):
    """The second-sphere block of the Gamma_2 form was not positive semidefinite."""
