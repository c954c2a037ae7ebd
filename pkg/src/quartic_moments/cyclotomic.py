"""Exact arithmetic in Z[i, zeta_p] for an odd prime p.

Elements are stored on the Z-basis ``i^a zeta^b`` (a in {0,1}, b in 0..p-2)
as a flat tuple of Python ints, index ``a*(p-1) + b``.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable

import numpy as np


class CycInt:
    __slots__ = ("p", "c", "_hash")

    def __init__(self, p: int, coeffs: Iterable[int]):
        self.p = p
        self.c = tuple(int(x) for x in coeffs)
        if len(self.c) != 2 * (p - 1):
            raise ValueError("coefficient vector has the wrong length")
        self._hash = None

    # construction
    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (2 * (p - 1)))

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        c = [0] * (2 * (p - 1))
        c[0] = n
        return cls(p, c)

    @classmethod
    def from_raw(cls, p: int, raw) -> "CycInt":
        """Canonicalize a 4 x p table ``raw[a][b]`` meaning sum raw[a][b] i^a zeta^b."""
        m = p - 1
        re = [0] * p
        im = [0] * p
        for b in range(p):
            r = raw[0][b] - raw[2][b]
            s = raw[1][b] - raw[3][b]
            re[b] = int(r)
            im[b] = int(s)
        # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
        top_re, top_im = re[m], im[m]
        out = [re[b] - top_re for b in range(m)] + [im[b] - top_im for b in range(m)]
        return cls(p, out)

    @classmethod
    def root(cls, p: int, a: int, b: int) -> "CycInt":
        """The unit i^a zeta^b."""
        raw = [[0] * p for _ in range(4)]
        raw[a % 4][b % p] = 1
        return cls.from_raw(p, raw)

    @classmethod
    def from_counts(cls, p: int, counts: np.ndarray) -> "CycInt":
        """Canonicalize a (4, p) integer array of multiplicities of i^a zeta^b."""
        return cls.from_raw(p, [[int(x) for x in row] for row in np.asarray(counts).reshape(4, p)])

    # raw view
    def _raw(self):
        m = self.p - 1
        return self.c[:m], self.c[m:]

    def __add__(self, y):
        y = self._coerce(y)
        return CycInt(self.p, (a + b for a, b in zip(self.c, y.c)))

    __radd__ = __add__

    def __sub__(self, y):
        y = self._coerce(y)
        return CycInt(self.p, (a - b for a, b in zip(self.c, y.c)))

    def __rsub__(self, y):
        return self._coerce(y) - self

    def __neg__(self):
        return CycInt(self.p, (-a for a in self.c))

    def __mul__(self, y):
        if isinstance(y, int):
            return CycInt(self.p, (a * y for a in self.c))
        y = self._coerce(y)
        p = self.p
        m = p - 1
        xr, xi = self._raw()
        yr, yi = y._raw()
        # (xr + i xi)(yr + i yi) as polynomials in zeta, exponents < 2p
        re = [0] * (2 * p)
        im = [0] * (2 * p)
        for j in range(m):
            a, b = xr[j], xi[j]
            if not (a or b):
                continue
            for k in range(m):
                c, d = yr[k], yi[k]
                if not (c or d):
                    continue
                re[j + k] += a * c - b * d
                im[j + k] += a * d + b * c
        fre = [0] * p
        fim = [0] * p
        for e in range(2 * p):
            fre[e % p] += re[e]
            fim[e % p] += im[e]
        return CycInt.from_raw(p, [fre, fim, [0] * p, [0] * p])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CycInt.integer(self.p, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "CycInt":
        """i -> -i, zeta -> zeta^-1."""
        p = self.p
        xr, xi = self._raw()
        raw = [[0] * p for _ in range(4)]
        for b in range(p - 1):
            raw[0][(-b) % p] += xr[b]
            raw[3][(-b) % p] += xi[b]
        return CycInt.from_raw(p, raw)

    def times_i_power(self, k: int) -> "CycInt":
        k %= 4
        if k == 0:
            return self
        xr, xi = self._raw()
        if k == 1:
            return CycInt(self.p, tuple(-x for x in xi) + tuple(xr))
        if k == 2:
            return -self
        return CycInt(self.p, tuple(xi) + tuple(-x for x in xr))

    def _coerce(self, y) -> "CycInt":
        if isinstance(y, CycInt):
            if y.p != self.p:
                raise ValueError("mixing cyclotomic rings")
            return y
        if isinstance(y, int):
            return CycInt.integer(self.p, y)
        raise TypeError(f"cannot combine CycInt with {type(y).__name__}")

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_integer(self) -> bool:
        return not any(self.c[1:])

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError("not a rational integer")
        return self.c[0]

    def embed(self) -> complex:
        p = self.p
        z = cmath.exp(2j * math.pi / p)
        xr, xi = self._raw()
        return complex(sum(xr[b] * z ** b for b in range(p - 1))
                       + 1j * sum(xi[b] * z ** b for b in range(p - 1)))

    def __eq__(self, y):
        if isinstance(y, int):
            y = CycInt.integer(self.p, y)
        if not isinstance(y, CycInt):
            return NotImplemented
        return self.p == y.p and self.c == y.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.c))
        return self._hash

    def __repr__(self):
        terms = []
        m = self.p - 1
        for idx, v in enumerate(self.c):
            if v:
                a, b = divmod(idx, m)
                mono = ("i*" if a else "") + (f"z^{b}" if b else "")
                mono = mono.rstrip("*") or "1"
                terms.append(f"{v}*{mono}")
        return f"CycInt[p={self.p}](" + (" + ".join(terms) or "0") + ")"


def cyc_arith(x: CycInt, y: CycInt | None, op: str) -> CycInt:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "conj":
        return x.conj()
    raise ValueError(f"unknown op {op!r}")


def cyc_embed(x: CycInt) -> complex:
    return x.embed()
