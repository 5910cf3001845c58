#!/usr/bin/env python3
"""
qhyper workbench - Entry Point

Runs the command line; `python main.py serve` starts the MCP tool server.
Bounds and server identity live in src/qhyper/config.py.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from qhyper.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
