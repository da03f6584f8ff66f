"""Exact lifting of graded monomial *-algebras along central extensions."""

__version__ = "0.1.0"
