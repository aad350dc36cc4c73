"""Exact-arithmetic classification of quasi-alternating and formal L-space
Dehn surgery slopes, with a diagram-level quasi-alternating certifier."""

__version__ = "0.1.0"
