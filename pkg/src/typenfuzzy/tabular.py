"""Flat comma-separated exports.

Every table has a header row; numbers use the shortest round-trip decimal
form from :mod:`typenfuzzy.numfmt`, so output is byte-stable.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

from .errors import ArgumentError
from .fuzzcore import Element, Entry, TypeNFuzzySet
from .numfmt import render


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return render(v)
    return str(v)


def write_rows(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def set_header(level: int) -> list[str]:
    return ["element", "value"] + [f"d{l}" for l in range(1, level)] + ["top"]


def set_rows(F: TypeNFuzzySet):
    for en in F.entries:
        yield [en.element.label, en.element.value, *en.path, en.top]


def set_to_csv(F: TypeNFuzzySet) -> str:
    return write_rows(set_header(F.level), set_rows(F))


def set_from_csv(text: str, name: str = "", unit: str = "") -> TypeNFuzzySet:
    """Inverse of :func:`set_to_csv`; the level is read off the header."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ArgumentError("empty table") from None
    level = len(header) - 2
    if level < 1 or header != set_header(level):
        raise ArgumentError(f"unexpected header {header!r}")
    entries = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ArgumentError(f"row {lineno}: expected {len(header)} cells, got {len(row)}")
        value = float(row[1]) if row[1] else None
        nums = [float(c) for c in row[2:]]
        entries.append(Entry(Element(row[0], value, unit), tuple(nums[:-1]), nums[-1]))
    return TypeNFuzzySet.from_entries(name, level, entries)
