"""Semantic units in a named-graph store, causal map composition, formal
identification, and discrete-SCM estimation."""

__version__ = "0.1.0"
