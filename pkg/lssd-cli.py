#!/usr/bin/env python3
"""
Command-line entry point for the LSSD toolkit.
Constructs, verifies and screens linked systems of symmetric designs; see
`lssd-cli.py --help` for the subcommands.
"""

from __future__ import annotations

import sys

from lssd_cli import main

if __name__ == "__main__":
    sys.exit(main())
