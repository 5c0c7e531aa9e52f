"""Symbolic workbench for the provability logic GL over ordinal spaces."""

__version__ = "0.1.0"
