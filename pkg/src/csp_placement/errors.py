"""Exception hierarchy shared by all modules."""


class CspPlacementError(Exception):
    """Base class for every error raised by this package."""


class GraphError(CspPlacementError):
    pass


class MalformedLine(GraphError):
    def __init__(self, lineno, line):
        super().__init__(f"line {lineno}: expected '<node> <node>', got {line!r}")
        self.lineno = lineno
        self.line = line


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class UnknownNode(GraphError):
    pass


class NotASubgraph(GraphError):
    pass


class InfeasibleEdgeCount(GraphError):
    pass


class Disconnected(CspPlacementError):
    pass


class NotBiconnected(CspPlacementError):
    pass


class NotTwoConnected(CspPlacementError):
    pass


class PolygonPresent(CspPlacementError):
    pass


class NoEligibleNode(CspPlacementError):
    pass


class CapExceeded(CspPlacementError):
    pass


class NotNonMonitor(CspPlacementError):
    pass


class SameNode(CspPlacementError):
    pass
