"""Exact Gaussian rationals and truncated bivariate power series in (u, v)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class GaussRat:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("floats are not exact")
        return cls(Fraction(x), Fraction(0))

    def __add__(self, y):
        y = GaussRat.coerce(y)
        return GaussRat(self.re + y.re, self.im + y.im)

    __radd__ = __add__

    def __sub__(self, y):
        y = GaussRat.coerce(y)
        return GaussRat(self.re - y.re, self.im - y.im)

    def __rsub__(self, y):
        return GaussRat.coerce(y) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, y):
        y = GaussRat.coerce(y)
        return GaussRat(self.re * y.re - self.im * y.im, self.re * y.im + self.im * y.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, y):
        y = GaussRat.coerce(y)
        n = y.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        t = self * y.conj()
        return GaussRat(t.re / n, t.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, y):
        try:
            y = GaussRat.coerce(y)
        except TypeError:
            return NotImplemented
        return self.re == y.re and self.im == y.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


I_UNIT = GaussRat(0, 1)
ZERO = GaussRat()
ONE = GaussRat(1)


def i_power(k: int) -> GaussRat:
    return (ONE, I_UNIT, GaussRat(-1), GaussRat(0, -1))[k % 4]


class BiSeries:
    """Coefficients of u^a v^b for a <= umax, b <= vmax, stored densely."""

    def __init__(self, umax: int, vmax: int, grid=None):
        self.umax, self.vmax = umax, vmax
        if grid is None:
            grid = [[ZERO] * (vmax + 1) for _ in range(umax + 1)]
        self.grid = [[GaussRat.coerce(x) for x in row] for row in grid]

    @classmethod
    def one(cls, umax: int, vmax: int) -> "BiSeries":
        s = cls(umax, vmax)
        s.grid[0][0] = ONE
        return s

    def __getitem__(self, ab):
        a, b = ab
        return self.grid[a][b]

    def __setitem__(self, ab, val):
        a, b = ab
        self.grid[a][b] = GaussRat.coerce(val)

    def _same_shape(self, y: "BiSeries"):
        if (self.umax, self.vmax) != (y.umax, y.vmax):
            raise ValueError("series truncations differ")

    def __add__(self, y: "BiSeries") -> "BiSeries":
        self._same_shape(y)
        return BiSeries(self.umax, self.vmax,
                        [[x + z for x, z in zip(r, s)] for r, s in zip(self.grid, y.grid)])

    def __sub__(self, y: "BiSeries") -> "BiSeries":
        self._same_shape(y)
        return BiSeries(self.umax, self.vmax,
                        [[x - z for x, z in zip(r, s)] for r, s in zip(self.grid, y.grid)])

    def __mul__(self, y) -> "BiSeries":
        if not isinstance(y, BiSeries):
            c = GaussRat.coerce(y)
            return BiSeries(self.umax, self.vmax, [[x * c for x in r] for r in self.grid])
        self._same_shape(y)
        U, V = self.umax, self.vmax
        out = [[ZERO] * (V + 1) for _ in range(U + 1)]
        for a1 in range(U + 1):
            for b1 in range(V + 1):
                x = self.grid[a1][b1]
                if x.is_zero():
                    continue
                for a2 in range(U + 1 - a1):
                    row = y.grid[a2]
                    orow = out[a1 + a2]
                    for b2 in range(V + 1 - b1):
                        z = row[b2]
                        if not z.is_zero():
                            orow[b1 + b2] = orow[b1 + b2] + x * z
        return BiSeries(U, V, out)

    __rmul__ = __mul__

    def reciprocal(self) -> "BiSeries":
        """1/s for a series whose constant term is a nonzero Gaussian rational."""
        c0 = self.grid[0][0]
        if c0.is_zero():
            raise ZeroDivisionError("constant term is zero")
        U, V = self.umax, self.vmax
        inv = [[ZERO] * (V + 1) for _ in range(U + 1)]
        inv0 = ONE / c0
        for a in range(U + 1):
            for b in range(V + 1):
                if a == 0 and b == 0:
                    inv[0][0] = inv0
                    continue
                acc = ZERO
                for a1 in range(a + 1):
                    for b1 in range(b + 1):
                        if a1 == 0 and b1 == 0:
                            continue
                        x = self.grid[a1][b1]
                        if not x.is_zero():
                            acc = acc + x * inv[a - a1][b - b1]
                inv[a][b] = -(acc * inv0)
        return BiSeries(U, V, inv)

    def __eq__(self, y):
        if not isinstance(y, BiSeries):
            return NotImplemented
        return (self.umax, self.vmax) == (y.umax, y.vmax) and self.grid == y.grid

    def diff(self, y: "BiSeries") -> list[tuple[int, int, GaussRat, GaussRat]]:
        self._same_shape(y)
        return [(a, b, self.grid[a][b], y.grid[a][b])
                for a in range(self.umax + 1) for b in range(self.vmax + 1)
                if self.grid[a][b] != y.grid[a][b]]

    def size(self) -> int:
        return (self.umax + 1) * (self.vmax + 1)

    def eval_v(self, a: int, v_pow) -> list[GaussRat]:
        """Row ``a`` as a list (helper for specializations done by callers)."""
        return list(self.grid[a])

    def __repr__(self):
        return f"BiSeries(umax={self.umax}, vmax={self.vmax})"


def random_unit_series(umax: int, vmax: int, rng: random.Random, bound: int = 5) -> BiSeries:
    s = BiSeries(umax, vmax)
    for a in range(umax + 1):
        for b in range(vmax + 1):
            s[a, b] = GaussRat(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                               Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
    while s[0, 0].is_zero():
        s[0, 0] = GaussRat(rng.randint(1, bound))
    return s


# ---------------------------------------------- univariate Gaussian-integer series
# A u-series truncated at degree n is a list of (re, im) integer pairs.

def gser_one(n: int) -> list:
    return [(1, 0)] + [(0, 0)] * n


def gser_mul(a: list, b: list) -> list:
    n = len(a)
    out = [[0, 0] for _ in range(n)]
    for j, (ar, ai) in enumerate(a):
        if not (ar or ai):
            continue
        for k in range(n - j):
            br, bi = b[k]
            if br or bi:
                o = out[j + k]
                o[0] += ar * br - ai * bi
                o[1] += ar * bi + ai * br
    return [tuple(x) for x in out]


def gser_pow(a: list, e: int) -> list:
    out = gser_one(len(a) - 1)
    while e:
        if e & 1:
            out = gser_mul(out, a)
        a = gser_mul(a, a)
        e >>= 1
    return out


def gser_geometric(n: int, k: int, d: int, m: int) -> list:
    """(1 - i^k u^d)^(-m) truncated at u^n (binomial series)."""
    from math import comb
    out = [(0, 0)] * (n + 1)
    j = 0
    while j * d <= n:
        c = comb(m + j - 1, j) if m else (1 if j == 0 else 0)
        z = ((1, 0), (0, 1), (-1, 0), (0, -1))[(k * j) % 4]
        out[j * d] = (c * z[0], c * z[1])
        j += 1
    return out


def gser_inverse(a: list) -> list:
    """1/a for a series with constant term +-1 or +-i."""
    n = len(a)
    c0 = a[0]
    inv0 = {(1, 0): (1, 0), (-1, 0): (-1, 0), (0, 1): (0, -1), (0, -1): (0, 1)}[c0]
    out = [inv0] + [(0, 0)] * (n - 1)
    for m in range(1, n):
        sr = si = 0
        for j in range(1, m + 1):
            ar, ai = a[j]
            br, bi = out[m - j]
            sr += ar * br - ai * bi
            si += ar * bi + ai * br
        out[m] = (-(sr * inv0[0] - si * inv0[1]), -(sr * inv0[1] + si * inv0[0]))
    return out
