"""Shortest round-trip decimal rendering used by every text output."""

from __future__ import annotations

import math
from decimal import Decimal


def render(x: float | int) -> str:
    """Render ``x`` with the fewest digits that parse back to the same float.

    Never uses scientific notation, and drops a trailing ``.0``::

        >>> render(0.90)
        '0.9'
        >>> render(1.0)
        '1'
        >>> render(1e-7)
        '0.0000001'
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite number {x!r}")
    if x == 0:
        return "0"
    text = format(Decimal(repr(x)), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text
