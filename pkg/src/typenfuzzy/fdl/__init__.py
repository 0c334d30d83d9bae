"""FDL: a small text language declaring element ranges, shapes, fuzzy sets, worlds and events."""

from .model import FuzzyDecl, Model, load, validate_document
from .syntax import (KINDS, Block, Diagnostic, Document, FDLError, Field, ListValue, Number, Text,
                     Word, parse)
from .writer import serialize


def load_text(source: str) -> Model:
    """Parse and resolve ``source`` in one step."""
    return load(parse(source))


__all__ = ["KINDS", "Block", "Diagnostic", "Document", "FDLError", "Field", "FuzzyDecl", "ListValue",
           "Model", "Number", "Text", "Word", "load", "load_text", "parse", "serialize",
           "validate_document"]
