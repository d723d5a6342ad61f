"""
PolyBisect Utilities Module
Exact parsing and formatting of rationals and sites, timing and
export helpers shared by the command line and the library.
"""
import json
import logging
import re
import time
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from config import JSON_INDENT, OFF_SIGNIFICANT_DIGITS
from errors import InputFormatError, SiteParseError
from exact_core import QVector, Rational, rat

# Set up logging
logger = logging.getLogger(__name__)

RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$')

# ========================================
# PARSING
# ========================================

def parse_rational(text: str) -> Rational:
    """
    Parse "p/q" or "p" exactly. Decimal literals are rejected rather than rounded.
    """
    if not isinstance(text, str):
        raise SiteParseError(f"expected a rational string, got {text!r}")
    match = RATIONAL_PATTERN.match(text)
    if not match:
        raise SiteParseError(f"'{text}' is not a rational of the form p/q")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise SiteParseError(f"'{text}' has a zero denominator")
    return rat(num, den)


def parse_site(text: str) -> QVector:
    """Comma-separated rationals, e.g. "5,2/3,-1"."""
    if not text or not text.strip():
        raise SiteParseError("empty site")
    return QVector(tuple(parse_rational(part) for part in text.split(',')))


def parse_vector(values: Sequence[Any]) -> QVector:
    """Vector from JSON values: strings "p/q" or integers."""
    coords = []
    for value in values:
        if isinstance(value, bool):
            raise SiteParseError(f"boolean {value} is not a coordinate")
        if isinstance(value, int):
            coords.append(Fraction(value))
        elif isinstance(value, str):
            coords.append(parse_rational(value))
        else:
            raise SiteParseError(f"coordinate {value!r} must be a string 'p/q' or an integer")
    return QVector(tuple(coords))


# ========================================
# FORMATTING
# ========================================

def rational_to_decimal(x: Rational, digits: int = OFF_SIGNIFICANT_DIGITS) -> str:
    """Decimal rendering at a fixed number of significant digits."""
    if x == 0:
        return "0"
    value = Context(prec=digits).divide(Decimal(x.numerator), Decimal(x.denominator))
    text = format(value, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def format_duration(seconds: float) -> str:
    """
    Format a duration in seconds to a human-readable string.
    """
    if seconds < 60:
        return f"{seconds:.1f}s"
    elif seconds < 3600:
        minutes = seconds / 60
        return f"{minutes:.1f}m"
    else:
        hours = seconds / 3600
        return f"{hours:.1f}h"


# ========================================
# ERROR HANDLING UTILITIES
# ========================================

def log_error(message: str, command: Optional[str] = None, exception: Optional[Exception] = None) -> None:
    """
    Log an error with consistent formatting and optional context.
    """
    log_message = f"ERROR: {message}"

    if command:
        log_message += f" [Command: {command}]"

    if exception:
        logger.error(log_message, exc_info=True)
    else:
        logger.error(log_message)


# ========================================
# PERFORMANCE UTILITIES
# ========================================

class Timer:
    """Context manager for timing operations."""

    def __init__(self, operation_name: str, logger: Optional[logging.Logger] = None):
        self.operation_name = operation_name
        self.logger = logger or logging.getLogger(__name__)
        self.start_time = None
        self.duration = 0.0

    def __enter__(self):
        self.start_time = time.time()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.start_time:
            self.duration = time.time() - self.start_time
            self.logger.info(f"{self.operation_name} completed in {self.duration:.2f}s")


# ========================================
# EXPORT UTILITIES
# ========================================

def export_results_to_json(results: Dict[str, Any], filename: Optional[str] = None) -> str:
    """
    Export results to JSON format. Keys keep insertion order so identical runs
    produce identical bytes.

    Returns:
        str: JSON string, or the filename if saved
    """
    json_data = json.dumps(results, indent=JSON_INDENT, default=str)

    if filename:
        write_text_output(filename, json_data + "\n")
        return filename

    return json_data


def write_text_output(filename: str, text: str) -> Path:
    """Write a text artifact, creating parent directories."""
    path = Path(filename)
    if path.is_dir():
        raise InputFormatError(f"output path {filename} is a directory")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
    logger.info(f"Wrote {path}")
    return path
