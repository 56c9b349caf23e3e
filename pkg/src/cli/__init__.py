"""
CLI Module

This module contains the command-line front end of cclab.

Modules:
    - cclab_cli: Argument parsing and command dispatch
    - components: One component per subcommand plus console logging
"""

__version__ = "1.0.0"
__author__ = "cclab Team"
