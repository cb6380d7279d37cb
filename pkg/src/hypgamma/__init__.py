"""Contiguity relations, admissible quadruples and Γ-evaluations of Gauss 2F1."""
__version__ = "0.1.0"
