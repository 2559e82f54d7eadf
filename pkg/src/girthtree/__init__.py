"""Embedding oriented trees into digraphs of large girth, with exhaustive checks."""

__version__ = "0.1.0"
