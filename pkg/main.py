#!/usr/bin/env python3
"""
📐 POLYMAX - Maximum intersections of two polygons
Main entry point for the command-line toolkit

Commands:
- generate: build an extremal pair for a parity class
- count: count crossings in a polygon document
- verify: run every construction with its self-checks
- search: exhaustive / randomized search on small grids
- render: draw a document as SVG

Version: 1.0.0
License: MIT
"""

import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.interface.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
