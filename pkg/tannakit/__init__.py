"""Exact-arithmetic toolkit for Hopf algebras of finite groups, induction along normal
subgroups, and the quotient category of triples that realizes Rep(L) from Rep(G)."""

from __future__ import annotations

__version__ = "0.1.0"
