import logging

from django.conf import settings

APP_LOGGERS = tuple(settings.LOGGING['loggers'])


def apply_verbosity(verbosity: int) -> None:
    """--verbosity 0 silences the app loggers, 2 and 3 switch them to DEBUG."""
    if verbosity == 0:
        level = logging.ERROR
    elif verbosity > 1:
        level = logging.DEBUG
    else:
        return
    for name in APP_LOGGERS:
        logging.getLogger(name).setLevel(level)
