class NetProfilerError(ValueError):
    """Base class for every analysis error raised by netprofiler."""


class InvalidParam(NetProfilerError):
    pass


class InvalidGraph(NetProfilerError):
    """A Graph invariant was violated while building a graph."""


class DisconnectedGraph(NetProfilerError):
    pass


class TooSmall(NetProfilerError):
    pass
