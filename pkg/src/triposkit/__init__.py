"""Finite triposes, their partial-equivalence-relation toposes and coarse reflection."""

__version__ = "0.1.0"
