import os
import sys


def main():
    """Entry point of `netprofiler <command>` and `manage.py <command>`."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'core.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install netprofiler's dependencies "
            "(pip install -e .) or activate the .venv first."
        ) from exc
    execute_from_command_line(['netprofiler', *sys.argv[1:]])
