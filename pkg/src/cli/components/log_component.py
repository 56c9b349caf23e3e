"""
Log Component

Console logging and status output for the cclab command line. Installs a
single stream handler on the root logger with colorama-coloured level names
and prints coloured PASS/FAIL summary lines.

Usage:
    from cli.components.log_component import LogComponent

    log_component = LogComponent(level="INFO", use_color=True)
    log_component.status("12 rows, 0 violations", ok=True)
"""

import logging
import sys
from typing import Optional, TextIO

from colorama import Fore, Style
from colorama import init as colorama_init

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class ColorFormatter(logging.Formatter):
    """Formatter that colours the level name."""

    def __init__(self, fmt: str = LOG_FORMAT, use_color: bool = True):
        super().__init__(fmt)
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        if not self.use_color:
            return super().format(record)
        original = record.levelname
        record.levelname = f"{LEVEL_COLORS.get(record.levelno, '')}{original}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


def configure_logging(level: str = "INFO", use_color: bool = True,
                      stream: Optional[TextIO] = None) -> logging.Handler:
    """
    Install the console handler on the root logger.

    Args:
        level (str): DEBUG, INFO, WARNING or ERROR (default: "INFO")
        use_color (bool): Colour level names (default: True)
        stream (Optional[TextIO]): Target stream (default: stderr)

    Returns:
        logging.Handler: The installed handler

    Raises:
        ValueError: If the level name is unknown
    """
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {level}")
    if use_color:
        colorama_init()
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(ColorFormatter(use_color=use_color))
    logging.basicConfig(level=numeric, handlers=[handler], force=True)
    return handler


class LogComponent:
    """
    Logging setup plus coloured status lines on stdout.

    Attributes:
        level (str): Active log level name
        use_color (bool): Whether output is coloured
        out (TextIO): Stream for status lines
        handler (logging.Handler): Installed log handler
    """

    def __init__(self, level: str = "INFO", use_color: bool = True, out: Optional[TextIO] = None):
        """
        Initialize the LogComponent and install the log handler.

        Args:
            level (str): Log level name (default: "INFO")
            use_color (bool): Colour output (default: True)
            out (Optional[TextIO]): Stream for status lines (default: stdout)
        """
        self.level = level.upper()
        self.use_color = use_color
        self.out = out or sys.stdout
        self.handler = configure_logging(self.level, use_color)

    @staticmethod
    def level_from_flags(verbose: bool, quiet: bool) -> str:
        """--verbose maps to DEBUG, --quiet to WARNING, otherwise INFO."""
        if verbose:
            return "DEBUG"
        if quiet:
            return "WARNING"
        return "INFO"

    def _paint(self, text: str, color: str) -> str:
        return f"{color}{text}{Style.RESET_ALL}" if self.use_color else text

    def message(self, text: str):
        """Print a plain line."""
        print(text, file=self.out)

    def status(self, text: str, ok: bool = True):
        """
        Print a PASS/FAIL status line.

        Args:
            text (str): Status text
            ok (bool): PASS when True, FAIL otherwise
        """
        tag = self._paint("PASS", Fore.GREEN) if ok else self._paint("FAIL", Fore.RED)
        print(f"[{tag}] {text}", file=self.out)

    def error(self, text: str):
        """Print an error line to stderr."""
        print(self._paint(f"error: {text}", Fore.RED), file=sys.stderr)
