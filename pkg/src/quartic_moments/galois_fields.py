"""Arithmetic in F_p and F_{p^2} = F_p(i) for primes p = 3 mod 4.

Elements of F_{p^2} are encoded as integers ``code = re + im * p`` with
``0 <= re, im < p``; prime-field elements are exactly the codes below ``p``.
All arithmetic goes through precomputed tables held by :class:`FieldCtx`,
mirrored as numpy arrays for the vectorized kernels.

The isomorphism between complex and field quartic roots of unity is fixed by
sending the complex ``i`` to the adjoined root ``x`` (code ``p``).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, NotPrime, NotQuarticRoot, WrongResidue

OMEGA_CONVENTION = "Omega(i)=x"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


class FieldCtx:
    """Immutable table bundle for F_{p^2} (and its prime subfield).

    Attributes
    ----------
    p : characteristic, ``p % 4 == 3``
    Q : ``p * p``, size of the extension field
    i_code : code of the distinguished square root of -1
    add, sub, mul : ``Q x Q`` tuples of tuples of codes
    neg, inv, frob, trace : length-``Q`` tuples (``inv[0]`` is -1)
    ADD, SUB, MUL, NEG, TRACE : numpy mirrors (int64)
    """

    def __init__(self, p: int, omega_sign: int = 1):
        if p < 3 or not _is_prime(p):
            raise NotPrime(f"{p} is not an odd prime")
        if p % 4 != 3:
            raise WrongResidue(f"{p} mod 4 = {p % 4}, need 3")
        self.p = p
        self.Q = Q = p * p
        re = [c % p for c in range(Q)]
        im = [c // p for c in range(Q)]
        add = []
        mul = []
        for a in range(Q):
            ra, ia = re[a], im[a]
            add.append(tuple(((ra + re[b]) % p) + ((ia + im[b]) % p) * p for b in range(Q)))
            mul.append(tuple(
                ((ra * re[b] - ia * im[b]) % p) + ((ra * im[b] + ia * re[b]) % p) * p
                for b in range(Q)))
        neg = tuple((-re[c] % p) + (-im[c] % p) * p for c in range(Q))
        self.add = tuple(add)
        self.mul = tuple(mul)
        self.neg = neg
        self.sub = tuple(tuple(add[a][neg[b]] for b in range(Q)) for a in range(Q))
        inv = [-1] * Q
        for a in range(1, Q):
            row = mul[a]
            for b in range(1, Q):
                if row[b] == 1:
                    inv[a] = b
                    break
        self.inv = tuple(inv)
        self.frob = tuple(re[c] + (-im[c] % p) * p for c in range(Q))
        # Tr_{F_{p^2}/F_p}(a + b x) = 2a
        self.trace = tuple((2 * re[c]) % p for c in range(Q))

        # Omega(i_C) = x  (omega_sign=+1) or the alternate choice -x.
        self.omega_sign = omega_sign
        self.i_code = p if omega_sign == 1 else (p - 1) * p
        self.minus_i_code = self.neg[self.i_code]
        self._omega_log = {1: 0, self.i_code: 1, p - 1: 2, self.minus_i_code: 3}

        self.ADD = np.array(self.add, dtype=np.int64)
        self.SUB = np.array(self.sub, dtype=np.int64)
        self.MUL = np.array(self.mul, dtype=np.int64)
        self.NEG = np.array(self.neg, dtype=np.int64)
        self.TRACE = np.array(self.trace, dtype=np.int64)
        self.FROB = np.array(self.frob, dtype=np.int64)

    def __repr__(self):
        return f"FieldCtx(p={self.p})"

    # scalar helpers on codes
    def pow(self, a: int, k: int) -> int:
        if k < 0:
            if a == 0:
                raise DivisionByZero("0 has no inverse")
            a, k = self.inv[a], -k
        result = 1
        mul = self.mul
        while k:
            if k & 1:
                result = mul[result][a]
            a = mul[a][a]
            k >>= 1
        return result

    def omega_inverse(self, z: int) -> int:
        """Exponent k in Z/4 with ``z = Omega(i_C^k)``."""
        try:
            return self._omega_log[z]
        except KeyError:
            raise NotQuarticRoot(f"{self.elem(z)} is not a quartic root of unity") from None

    def elem(self, code: int) -> "Fq2Elem":
        return Fq2Elem(code % self.p, code // self.p, self.p)

    def code(self, re: int, im: int = 0) -> int:
        return (re % self.p) + (im % self.p) * self.p

    def elements(self, ext: bool = True) -> range:
        return range(self.Q if ext else self.p)


@functools.lru_cache(maxsize=None)
def make_field(p: int, omega_sign: int = 1) -> FieldCtx:
    """Build (and cache) the field context for the prime ``p``.

    ``omega_sign=-1`` selects the alternate isomorphism Omega(i) = -x, which
    permutes characters within the family.
    """
    return FieldCtx(p, omega_sign)


@dataclass(frozen=True)
class Fq2Elem:
    """Element ``re + im * i`` of F_{p^2}."""

    re: int
    im: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "re", self.re % self.p)
        object.__setattr__(self, "im", self.im % self.p)

    @property
    def code(self) -> int:
        return self.re + self.im * self.p

    @property
    def ctx(self) -> FieldCtx:
        return make_field(self.p)

    def _wrap(self, code):
        return Fq2Elem(code % self.p, code // self.p, self.p)

    def _other(self, y):
        if isinstance(y, int):
            return y % self.p
        if y.p != self.p:
            raise ValueError("elements of different fields")
        return y.code

    def __add__(self, y):
        return self._wrap(self.ctx.add[self.code][self._other(y)])

    __radd__ = __add__

    def __sub__(self, y):
        return self._wrap(self.ctx.sub[self.code][self._other(y)])

    def __rsub__(self, y):
        return self._wrap(self.ctx.sub[self._other(y)][self.code])

    def __neg__(self):
        return self._wrap(self.ctx.neg[self.code])

    def __mul__(self, y):
        return self._wrap(self.ctx.mul[self.code][self._other(y)])

    __rmul__ = __mul__

    def __truediv__(self, y):
        d = self._other(y)
        if d == 0:
            raise DivisionByZero("division by zero in F_q^2")
        return self._wrap(self.ctx.mul[self.code][self.ctx.inv[d]])

    def __pow__(self, k: int):
        return self._wrap(self.ctx.pow(self.code, k))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"Fq2Elem({self.re}+{self.im}*i mod {self.p})"


def field_arith(x: Fq2Elem, y, op: str, k: int | None = None) -> Fq2Elem:
    """Dispatch ``op`` in {add, sub, mul, div, pow}; ``pow`` uses ``k``."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "pow":
        return x ** (k if k is not None else y)
    raise ValueError(f"unknown op {op!r}")


def frobenius(x: Fq2Elem) -> Fq2Elem:
    """x -> x^p, the generator of Gal(F_{p^2}/F_p)."""
    return Fq2Elem(x.re, -x.im, x.p)


def omega_inverse(z: Fq2Elem) -> int:
    return z.ctx.omega_inverse(z.code)


def trace_to_prime(x: Fq2Elem) -> int:
    """x + x^p, an element of the prime field."""
    return (2 * x.re) % x.p
