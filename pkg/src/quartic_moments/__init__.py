"""Exact laboratory for quartic characters over F_q(T), q = 3 mod 4.

Builds the genus-g family of primitive quartic characters through F_{q^2}[T],
computes polynomial Gauss sums and L-polynomials exactly, and compares the
first moment of central values with its Euler-product main term.
"""

__version__ = "0.1.0"
