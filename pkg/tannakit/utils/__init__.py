from __future__ import annotations

from .numbers import cyclotomic, divisors, is_prime, least_nonresidue  # noqa: F401

__all__ = ["cyclotomic", "divisors", "is_prime", "least_nonresidue"]
