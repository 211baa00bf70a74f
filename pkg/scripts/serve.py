#!/usr/bin/env python3
"""Run the exploration API service.

Usage:
    python scripts/serve.py --port 8000 --data-dir ./data --provider-mode mock
"""

from intentblocks.service.cli import main

if __name__ == "__main__":
    main()
