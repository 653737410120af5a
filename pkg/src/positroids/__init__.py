"""Exact combinatorics of positroid cells.

Decorated permutations, diagrams with {0,+} fillings, planar bicolored
graphs, the split and blow-up recursions, Catalan-family bijections,
exact-rational network parameterizations, and sign-variation machinery,
plus a verification harness and CLI around all of it.
"""

from __future__ import annotations

__version__ = "0.1.0"
