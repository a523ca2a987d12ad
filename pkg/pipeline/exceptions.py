from graphs.exceptions import NetProfilerError


class EmptyCorpus(NetProfilerError):
    pass


class InvalidConfig(NetProfilerError):
    pass
