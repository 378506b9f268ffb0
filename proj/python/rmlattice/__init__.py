"""Principalization of polarized abelian surfaces with real multiplication."""

from ._core import (
    FormatError,
    HypothesisError,
    InvariantError,
    Order,
    Report,
    Surface,
    generate,
    humbert_nonempty,
    principalize,
    verify,
)

__all__ = [
    "FormatError",
    "HypothesisError",
    "InvariantError",
    "Order",
    "Report",
    "Surface",
    "generate",
    "humbert_nonempty",
    "principalize",
    "verify",
]
