"""Exact operator models of genus-zero curve algebras and their graded limits.

Subpackages by theme: :mod:`skeincb.scalars` (coefficient fields),
:mod:`skeincb.qdiff` (normal-ordered shift operators), :mod:`skeincb.skeinrep`
(trace and polynomial images of curve generators), :mod:`skeincb.monopole`
(dressed operators and the invariant embedding), :mod:`skeincb.grcoulomb`
(coweight-graded algebra), :mod:`skeincb.fusion` (planar diagram algebra),
and :mod:`skeincb.cli` (verification suites and expression evaluator).
"""

__version__ = "0.1.0"

__all__ = ["scalars", "qdiff", "skeinrep", "monopole", "grcoulomb", "fusion", "cli"]
