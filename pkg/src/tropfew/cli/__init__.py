"""Text format, JSON reports, SVG output and command dispatch."""

from .grammar import (
    ParseError,
    SystemFile,
    format_polynomial,
    format_system,
    parse_file,
    parse_polynomial,
    parse_system,
)
from .main import build_parser, main, run

__all__ = [
    "ParseError", "SystemFile", "format_polynomial", "format_system", "parse_file",
    "parse_polynomial", "parse_system", "build_parser", "main", "run",
]
