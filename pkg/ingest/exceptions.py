from graphs.exceptions import NetProfilerError


class ParseError(NetProfilerError):
    """Malformed network file; `line` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)


class NotBipartite(NetProfilerError):
    pass


class MissingSideDeclaration(NetProfilerError):
    pass


class EmptyResult(NetProfilerError):
    pass


class UnsupportedFormat(NetProfilerError):
    pass
