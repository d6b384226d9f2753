"""Exact finite-scale verification of linear-group identities: matrix groups,
transvection words, ring-in-group interpretations, definable subgroups,
2-cocycles and abelian deformations."""

__version__ = "0.1.0"
