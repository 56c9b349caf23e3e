#!/usr/bin/env python3
"""
cclab - Main Entry Point

This is the main entry point for the cclab curvature inequality lab.
It puts src/ on the Python path and hands the arguments to the CLI.

Usage:
    python main.py fixtures --list
    python main.py check --config scenarios.json --out report.csv --format csv
"""

import sys
import os

# Add the src directory to the Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def main() -> int:
    """Main entry point for the cclab command line."""
    try:
        from cli.cclab_cli import CclabCLI

        return CclabCLI().run(sys.argv[1:])

    except ImportError as e:
        print(f"Import error: {e}")
        print("Please ensure all required modules are available (pip install -r requirements.txt).")
        return 2


if __name__ == "__main__":
    sys.exit(main())
