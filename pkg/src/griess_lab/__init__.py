"""Exact-arithmetic workbench for Griess algebras of 3C-pure type."""

__version__ = "0.1.0"
