from graphs.exceptions import NetProfilerError


class DegenerateTransitivity(NetProfilerError):
    """Latticized references have no triangles although the graph has some."""
