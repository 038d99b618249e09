"""Lambek calculus workbench: proof search, syntactic concept lattices,
algebra embeddings and countermodel search."""

from ._core import (
    Algebra,
    Concept,
    Dfa,
    Embedding,
    ModeError,
    ModelError,
    ParseError,
    Scl,
    TemplateMismatch,
    countermodel,
    embed,
    enumerate_algebras,
    normalize,
    prove,
    two_letter_check,
)

__all__ = [
    "Algebra",
    "Concept",
    "Dfa",
    "Embedding",
    "ModeError",
    "ModelError",
    "ParseError",
    "Scl",
    "TemplateMismatch",
    "countermodel",
    "embed",
    "enumerate_algebras",
    "normalize",
    "prove",
    "two_letter_check",
]
