"""Canonical FDL text output."""

from __future__ import annotations

from ..numfmt import render
from .syntax import Document, ListValue, Number, Text, Word

INDENT = "  "


def _value(v) -> str:
    if isinstance(v, Number):
        return render(v.value)
    if isinstance(v, Word):
        return v.text
    if isinstance(v, Text):
        return '"' + v.text.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, ListValue):
        return "[" + ", ".join(_value(i) for i in v.items) + "]"
    raise TypeError(f"not an FDL value: {v!r}")


def serialize(doc: Document) -> str:
    """Render ``doc`` canonically.

    Blocks are ordered by kind then name and fields by key, so documents
    that differ only in declaration order serialize identically.
    """
    chunks = []
    for block in sorted(doc.blocks, key=lambda b: b.sort_key()):
        lines = [f"{block.kind} {block.name} {{"]
        for f in sorted(block.fields, key=lambda f: f.key):
            lines.append(f"{INDENT}{f.key} = {_value(f.value)}")
        lines.append("}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + ("\n" if chunks else "")
