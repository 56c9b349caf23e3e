#!/usr/bin/env python3
"""
cclab - Launcher Script

Sets up the Python path, prints it, and launches the CLI. Useful when
diagnosing import problems; otherwise use main.py.

Usage:
    python run.py hessian --n 4 --r 6
"""

import sys
import os

# Add the current directory to Python path
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, current_dir)


def main() -> int:
    """Launch the cclab command line with path diagnostics."""
    try:
        print("Setting up Python path...", file=sys.stderr)
        print(f"Current directory: {current_dir}", file=sys.stderr)
        for package in ('core', 'utils', 'cli'):
            print(f"{package.capitalize()} directory: {os.path.join(current_dir, package)}", file=sys.stderr)

        from cli.cclab_cli import CclabCLI

        return CclabCLI().run(sys.argv[1:])

    except ImportError as e:
        print(f"Import error: {e}")
        print("Please ensure all required modules are available.")
        print(f"Python path: {sys.path}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
