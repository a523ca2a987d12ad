#!/usr/bin/env python
"""netprofiler command-line utility; same commands as the netprofiler script."""
from core.cli import main

if __name__ == '__main__':
    main()
