#!/usr/bin/env python3
"""
gaptrack command line entry point

Runs the CLI from a source checkout without installing the package.
"""

import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))


def main():
    try:
        from gaptrack.cli import main as cli_main
    except ImportError as e:
        print(f"Failed to import gaptrack: {e}", file=sys.stderr)
        print("Make sure you have all dependencies installed:", file=sys.stderr)
        print("   pip install -r requirements.txt", file=sys.stderr)
        sys.exit(1)
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
