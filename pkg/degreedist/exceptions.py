from graphs.exceptions import NetProfilerError


class DegenerateSample(NetProfilerError):
    """Fewer than two distinct degree values."""


class InvalidB(NetProfilerError):
    pass


class FitFailure(NetProfilerError):
    """Maximum likelihood did not converge for an alternative model."""
