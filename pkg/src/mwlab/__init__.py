"""Tutte-polynomial tools for auditing Merino-Welsh type inequalities on matroids."""

__version__ = "0.1.0"
