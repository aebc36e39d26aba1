"""Logging manager module for the sosggm project."""

import logging
import sys
from typing import Dict, Optional
from colorama import Fore, Style, init
from emoji import emojize

# Initialize colorama
init(autoreset=True)

LEVEL_COLORS: Dict[int, str] = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class LoggingManager:
    """
    Manages logging configuration and provides color/emoji formatted logging.

    Records go to stderr: stdout carries the JSON and CSV payloads of the
    command line and must stay machine-readable.
    """

    def __init__(self, logger_name: str, level: Optional[int] = None) -> None:
        """
        Attach a single stderr handler to the named logger.

        Args:
            logger_name (str): Module name of the caller
            level (Optional[int]): Logging level (default: the configured LOG_LEVEL)
        """
        if level is None:
            from sosggm.config import get_log_level

            level = get_log_level()

        self.logger = logging.getLogger(logger_name)
        self.logger.setLevel(level)

        if not self.logger.handlers:
            handler = logging.StreamHandler(sys.stderr)
            handler.setLevel(level)
            handler.setFormatter(
                logging.Formatter(
                    "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                )
            )
            self.logger.addHandler(handler)

    def debug(self, message: str, emoji: Optional[str] = None) -> None:
        """Log a debug message, optionally prefixed by an emoji shortcode."""
        self._log(logging.DEBUG, message, emoji)

    def info(self, message: str, emoji: Optional[str] = None) -> None:
        """Log an info message, optionally prefixed by an emoji shortcode."""
        self._log(logging.INFO, message, emoji)

    def warning(self, message: str, emoji: Optional[str] = None) -> None:
        """Log a warning message, optionally prefixed by an emoji shortcode."""
        self._log(logging.WARNING, message, emoji)

    def error(self, message: str, emoji: Optional[str] = None) -> None:
        """Log an error message, optionally prefixed by an emoji shortcode."""
        self._log(logging.ERROR, message, emoji)

    def critical(self, message: str, emoji: Optional[str] = None) -> None:
        """Log a critical message; defaults to the :skull: emoji."""
        self._log(logging.CRITICAL, message, emoji or ":skull:")

    def _log(self, level: int, message: str, emoji: Optional[str]) -> None:
        if self.logger.isEnabledFor(level):
            self.logger.log(level, self._format_message(message, emoji, LEVEL_COLORS[level]))

    def _format_message(self, message: str, emoji: Optional[str], color: str) -> str:
        """Wrap the message in the level colour, after the emojized shortcode if one is given."""
        if emoji:
            return f"{emojize(emoji, language='alias')} {color}{message}{Style.RESET_ALL}"
        return f"{color}{message}{Style.RESET_ALL}"


def get_logger(name: str, level: Optional[int] = None) -> LoggingManager:
    """Return a LoggingManager for a module; level defaults to SOSGGM_LOG_LEVEL."""
    return LoggingManager(name, level)
