"""Exception hierarchy shared by every module of the package."""


class ExtractionError(ValueError):
    """Base class for all errors raised by remote_extract."""


class GraphError(ExtractionError):
    pass


class DuplicateVertex(GraphError):
    pass


class IntraPartitionEdge(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class MixedPartition(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class FamilyTooSmall(ExtractionError):
    pass


class DegenerateGraph(ExtractionError):
    pass


class NoStarVertex(ExtractionError):
    pass


class InvalidMembers(ExtractionError):
    pass


class IterationCapExceeded(RuntimeError):
    """Raised when the expansion loop overruns its safety bound (a bug, not bad input)."""


class InstanceTooLarge(ExtractionError):
    pass


class EdgeCountOutOfRange(ExtractionError):
    def __init__(self, m, lo, hi):
        super().__init__(f"edge count {m} outside connected bipartite range [{lo}, {hi}]")
        self.m, self.lo, self.hi = m, lo, hi


class UnachievableDensity(ExtractionError):
    pass


class NoBipartiteSubgraphFound(ExtractionError):
    pass


class EmptySample(ExtractionError):
    pass


class ParseError(ExtractionError):
    pass
