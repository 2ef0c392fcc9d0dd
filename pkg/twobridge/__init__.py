"""Invariants of rational (two-bridge) links: continued fractions, braid index, HOMFLY polynomial."""

__version__ = "1.0.0"
