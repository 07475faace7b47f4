"""Toric engine: exact linear algebra, graphs, binomials and basis computations."""
