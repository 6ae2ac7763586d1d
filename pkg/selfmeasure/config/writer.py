"""Experiment document writer - the inverse of the parser for plain values."""

import math
import re
from typing import Any, List, Mapping, Optional

import numpy as np

from selfmeasure.errors import ConfigError
from .lexer import KEYWORDS

BARE_WORD = re.compile(r"^(?:[A-Za-z_/~]|\.(?!\d))[A-Za-z0-9_\-./~]*$")
INDENT = "  "


def format_float(value: float, precision: Optional[str] = None) -> str:
    """Float text that the lexer reads back as a float literal.

    ``precision=None`` writes the shortest repr (exact round trip); a printf
    format such as ``"%.12g"`` writes fixed significant digits.
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = repr(value) if precision is None else precision % value
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def format_string(value: str) -> str:
    if BARE_WORD.fullmatch(value) and value not in KEYWORDS:
        return value
    escaped = (
        value.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\t", "\\t")
        .replace("\r", "\\r")
    )
    return f'"{escaped}"'


def format_scalar(value: Any, precision: Optional[str] = None) -> str:
    """Inline text of a scalar or (nested) list value."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value, precision)
    if isinstance(value, str):
        return format_string(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(format_scalar(v, precision) for v in value) + "]"
    raise ConfigError(f"Cannot write value of type {type(value).__name__}")


def _dump_lines(mapping: Mapping[str, Any], depth: int, precision: Optional[str]) -> List[str]:
    lines = []
    for key, value in mapping.items():
        if not isinstance(key, str) or not key:
            raise ConfigError(f"Document keys must be non-empty strings, got {key!r}")
        prefix = INDENT * depth + format_string(key) + ":"
        if isinstance(value, Mapping):
            if not value:
                raise ConfigError(f"Mapping under {key!r} is empty")
            lines.append(prefix)
            lines.extend(_dump_lines(value, depth + 1, precision))
        else:
            lines.append(f"{prefix} {format_scalar(value, precision)}")
    return lines


def dump(mapping: Mapping[str, Any], precision: Optional[str] = None) -> str:
    """Document text for a mapping of plain values, one entry per line."""
    return "\n".join(_dump_lines(mapping, 0, precision)) + "\n"
