"""Parsing of spaces, vectors and rationals from command-line style strings."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .arith import as_fraction
from .qspace import QuadraticSpace


class InputError(ValueError):
    """Malformed user input; the message is meant for the terminal."""


_NAMED = re.compile(r"^(identity|hyperbolic|diag):(.*)$")


def parse_rational(text: str) -> Fraction:
    try:
        return as_fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def parse_vector(text: str) -> list[Fraction]:
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if not parts:
        raise InputError("empty vector")
    return [parse_rational(p) for p in parts]


def _space_from_data(data, origin: str) -> QuadraticSpace:
    if not isinstance(data, dict) or "gram" not in data:
        raise InputError(f"{origin}: expected an object with a 'gram' field")
    try:
        return QuadraticSpace.from_json(data)
    except (TypeError, KeyError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{origin}: {exc}") from exc


def load_space(source: str) -> QuadraticSpace:
    """A space from a file path, inline JSON, or ``identity:n`` / ``diag:a,b,..`` / ``hyperbolic:``."""
    source = source.strip()
    m = _NAMED.match(source)
    if m:
        kind, arg = m.groups()
        try:
            if kind == "identity":
                return QuadraticSpace.identity(int(arg))
            if kind == "diag":
                return QuadraticSpace.diagonal(parse_vector(arg))
            return QuadraticSpace.hyperbolic_plane()
        except ValueError as exc:
            raise InputError(f"{source}: {exc}") from exc
    if source.startswith("{"):
        text, origin = source, "inline JSON"
    else:
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
        origin = str(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines() or [""]
        line = lines[min(exc.lineno, len(lines)) - 1]
        raise InputError(f"{origin}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {line}") from exc
    return _space_from_data(data, origin)
