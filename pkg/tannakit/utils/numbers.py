"""Small integer helpers used by field parsing and the representation battery."""

from __future__ import annotations

from functools import lru_cache

import sympy
from sympy.abc import x


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


def divisors(n: int) -> list[int]:
    return [int(d) for d in sympy.divisors(n)]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def least_nonresidue(p: int) -> int:
    """Smallest n in [2, p) that is not a square mod the odd prime p."""
    for n in range(2, p):
        if not sympy.is_quad_residue(n, p):
            return n
    raise ValueError("no_nonresidue")
