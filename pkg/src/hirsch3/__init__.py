"""Exact classification tools for torsion-free solvable groups of small
Hirsch length: arithmetic primitives, group element models, a classifier,
a presentation simplifier, and a randomized verifier with a CLI front end.
"""

__version__ = "0.1.0"
