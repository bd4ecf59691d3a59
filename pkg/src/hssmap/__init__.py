"""Exact computational models of the birational map between compact Hermitian symmetric spaces and projective space."""
