"""Spectra of hypergraph Laplacians: discrete KMP, Weingarten projections, codimension-1 and Sym(n) blocks."""

__version__ = "0.1.0"
