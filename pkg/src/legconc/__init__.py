"""Chekanov-Eliashberg DGA invariants of Legendrian knots over GF(2) and
obstructions to exact Lagrangian concordances."""

__version__ = "0.1.0"
