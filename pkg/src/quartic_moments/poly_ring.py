"""Dense polynomials over F_q and F_{q^2}.

A polynomial is a tuple of field codes, lowest degree first, with no trailing
zero; the zero polynomial is ``()``.  A :class:`PolyRing` carries the field
tables and chooses between the base field (codes ``< p``) and the quadratic
extension.  Base polynomials are valid extension polynomials unchanged, so
lifting is the identity on tuples.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from .errors import (
    CoefficientOutOfRange,
    DivisionByZero,
    NotGaloisStable,
    NotMonic,
    PolySyntaxError,
)
from .galois_fields import FieldCtx, make_field

Poly = Tuple[int, ...]

ONE: Poly = (1,)
X: Poly = (0, 1)
DEFAULT_SEED = 0x5EED


def _strip(c) -> Poly:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _small_moebius(n: int) -> int:
    res, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            res = -res
        k += 1
    return -res if n > 1 else res


def _prime_divisors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(P ** e)`` with monic distinct primes in canonical order."""

    unit: int
    factors: Tuple[Tuple[Poly, int], ...]

    def primes(self) -> Tuple[Poly, ...]:
        return tuple(P for P, _ in self.factors)


class PolyRing:
    """Polynomial ring over F_p (``ext=False``) or F_{p^2} (``ext=True``)."""

    def __init__(self, ctx: FieldCtx, ext: bool = True):
        self.ctx = ctx
        self.ext = ext
        self.p = ctx.p
        self.Q = ctx.Q if ext else ctx.p
        self._prime_cache: dict[int, list[Poly]] = {}

    def __repr__(self):
        return f"PolyRing(p={self.p}, ext={self.ext})"

    # ------------------------------------------------------------------ basics
    @staticmethod
    def deg(f: Poly) -> int:
        return len(f) - 1

    def const(self, c: int) -> Poly:
        return (c,) if c else ()

    def add(self, f: Poly, g: Poly) -> Poly:
        if len(f) < len(g):
            f, g = g, f
        add = self.ctx.add
        out = list(f)
        for k, c in enumerate(g):
            out[k] = add[out[k]][c]
        return _strip(out)

    def sub(self, f: Poly, g: Poly) -> Poly:
        sub, neg = self.ctx.sub, self.ctx.neg
        n = max(len(f), len(g))
        out = []
        for k in range(n):
            a = f[k] if k < len(f) else 0
            b = g[k] if k < len(g) else 0
            out.append(sub[a][b])
        return _strip(out)

    def neg(self, f: Poly) -> Poly:
        neg = self.ctx.neg
        return tuple(neg[c] for c in f)

    def scale(self, c: int, f: Poly) -> Poly:
        if c == 0:
            return ()
        row = self.ctx.mul[c]
        return tuple(row[a] for a in f)

    def mul(self, f: Poly, g: Poly) -> Poly:
        if not f or not g:
            return ()
        mul, add = self.ctx.mul, self.ctx.add
        out = [0] * (len(f) + len(g) - 1)
        for j, a in enumerate(f):
            if a == 0:
                continue
            row = mul[a]
            for k, b in enumerate(g):
                if b:
                    out[j + k] = add[out[j + k]][row[b]]
        return _strip(out)

    def pow(self, f: Poly, e: int) -> Poly:
        result, base = ONE, f
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def divmod(self, f: Poly, g: Poly) -> tuple[Poly, Poly]:
        if not g:
            raise DivisionByZero("polynomial division by zero")
        ctx = self.ctx
        mul, sub = ctx.mul, ctx.sub
        r = list(f)
        dg = len(g) - 1
        inv_lead = ctx.inv[g[-1]]
        if len(r) <= dg:
            return (), _strip(r)
        quot = [0] * (len(r) - dg)
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if c == 0:
                continue
            c = mul[c][inv_lead]
            quot[k - dg] = c
            row = mul[c]
            for j in range(dg + 1):
                gj = g[j]
                if gj:
                    r[k - dg + j] = sub[r[k - dg + j]][row[gj]]
        return _strip(quot), _strip(r[:dg])

    def rem(self, f: Poly, g: Poly) -> Poly:
        if not g:
            raise DivisionByZero("polynomial division by zero")
        if len(f) < len(g):
            return f if not f or f[-1] else _strip(f)
        ctx = self.ctx
        mul, sub = ctx.mul, ctx.sub
        r = list(f)
        dg = len(g) - 1
        inv_lead = ctx.inv[g[-1]]
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if c == 0:
                continue
            if inv_lead != 1:
                c = mul[c][inv_lead]
            row = mul[c]
            for j in range(dg):
                gj = g[j]
                if gj:
                    r[k - dg + j] = sub[r[k - dg + j]][row[gj]]
            r[k] = 0
        return _strip(r[:dg])

    def floordiv(self, f: Poly, g: Poly) -> Poly:
        return self.divmod(f, g)[0]

    def monic(self, f: Poly) -> Poly:
        if not f or f[-1] == 1:
            return f
        return self.scale(self.ctx.inv[f[-1]], f)

    def gcd(self, f: Poly, g: Poly) -> Poly:
        """Monic gcd (``()`` only when both inputs are zero)."""
        while g:
            f, g = g, self.rem(f, g)
        return self.monic(f)

    def mulmod(self, f: Poly, g: Poly, m: Poly) -> Poly:
        return self.rem(self.mul(f, g), m)

    def powmod(self, f: Poly, e: int, m: Poly) -> Poly:
        if len(m) < 2:
            raise ValueError("powmod needs a modulus of degree >= 1")
        result = ONE
        base = self.rem(f, m)
        while e:
            if e & 1:
                result = self.mulmod(result, base, m)
            e >>= 1
            if e:
                base = self.mulmod(base, base, m)
        return self.rem(result, m)

    def derivative(self, f: Poly) -> Poly:
        mul = self.ctx.mul
        return _strip([mul[f[k]][k % self.p] for k in range(1, len(f))])

    def eval(self, f: Poly, x: int) -> int:
        mul, add = self.ctx.mul, self.ctx.add
        acc = 0
        for c in reversed(f):
            acc = add[mul[acc][x]][c]
        return acc

    # ----------------------------------------------------------- enumeration
    def from_index(self, d: int, idx: int) -> Poly:
        """Monic polynomial of degree ``d`` with lower coefficients = base-Q digits of ``idx``."""
        Q = self.Q
        c = []
        for _ in range(d):
            idx, r = divmod(idx, Q)
            c.append(r)
        c.append(1)
        return tuple(c)

    def index(self, f: Poly) -> int:
        idx = 0
        for c in reversed(f[:-1]):
            idx = idx * self.Q + c
        return idx

    def sort_key(self, f: Poly) -> tuple[int, int]:
        return (len(f) - 1, self.index(f))

    def enumerate_monic(self, d: int, start: int = 0, stop: int | None = None) -> Iterator[Poly]:
        """All ``Q**d`` monic polynomials of degree ``d``, optionally a slice of them."""
        if d < 0:
            raise ValueError("degree must be >= 0")
        total = self.Q ** d
        stop = total if stop is None else min(stop, total)
        for idx in range(start, stop):
            yield self.from_index(d, idx)

    def enumerate_all(self, d: int) -> Iterator[Poly]:
        """Every polynomial of degree <= ``d``, zero included."""
        Q = self.Q
        for idx in range(Q ** (d + 1)):
            c = []
            for _ in range(d + 1):
                idx, r = divmod(idx, Q)
                c.append(r)
            yield _strip(c)

    # ------------------------------------------------------- irreducibility
    def _frobenius_powers(self, f: Poly, n: int) -> list[Poly]:
        """[X^(Q^k) mod f for k = 0..n]."""
        out = [self.rem(X, f)]
        h = out[0]
        for _ in range(n):
            h = self.powmod(h, self.Q, f)
            out.append(h)
        return out

    def is_irreducible(self, f: Poly) -> bool:
        if len(f) < 2 or f[-1] != 1:
            raise NotMonic("is_irreducible needs a monic polynomial of degree >= 1")
        return self._is_irreducible(f)

    @functools.lru_cache(maxsize=1 << 16)
    def _is_irreducible(self, f: Poly) -> bool:
        n = len(f) - 1
        if n == 1:
            return True
        if f[0] == 0:
            return False
        powers = self._frobenius_powers(f, n)
        if powers[n] != self.rem(X, f):
            return False
        for r in _prime_divisors(n):
            g = self.gcd(self.sub(powers[n // r], X), f)
            if g != ONE:
                return False
        return True

    # -------------------------------------------------------- factorization
    def _pth_root(self, f: Poly) -> Poly:
        p = self.p
        root = (lambda c: c) if not self.ext else (lambda c: self.ctx.frob[c])
        return tuple(root(f[k]) for k in range(0, len(f), p))

    def _squarefree_decomposition(self, f: Poly) -> list[tuple[Poly, int]]:
        out = []
        c = self.gcd(f, self.derivative(f))
        w = self.floordiv(f, c)
        i = 1
        while w != ONE:
            y = self.gcd(w, c)
            fac = self.floordiv(w, y)
            if fac != ONE:
                out.append((fac, i))
            w = y
            c = self.floordiv(c, y)
            i += 1
        if c != ONE:
            for g, e in self._squarefree_decomposition(self._pth_root(c)):
                out.append((g, e * self.p))
        return out

    def _distinct_degree(self, f: Poly) -> list[tuple[Poly, int]]:
        out = []
        h = X
        i = 1
        while len(f) - 1 >= 2 * i:
            h = self.powmod(h, self.Q, f)
            g = self.gcd(self.sub(h, X), f)
            if g != ONE:
                out.append((g, i))
                f = self.floordiv(f, g)
                h = self.rem(h, f)
            i += 1
        if len(f) > 1:
            out.append((f, len(f) - 1))
        return out

    def _equal_degree(self, f: Poly, d: int, rng: random.Random) -> list[Poly]:
        n = len(f) - 1
        if n == d:
            return [f]
        e = (self.Q ** d - 1) // 2
        while True:
            a = _strip([rng.randrange(self.Q) for _ in range(n)])
            if len(a) < 2:
                continue
            g = self.gcd(a, f)
            if g == ONE:
                b = self.sub(self.powmod(a, e, f), ONE)
                g = self.gcd(b, f)
            if 0 < len(g) - 1 < n:
                return (self._equal_degree(g, d, rng)
                        + self._equal_degree(self.floordiv(f, g), d, rng))

    def factor(self, f: Poly, seed: int = DEFAULT_SEED) -> Factorization:
        if not f:
            raise ValueError("cannot factor the zero polynomial")
        unit = f[-1]
        f = self.monic(f)
        if len(f) == 1:
            return Factorization(unit, ())
        return Factorization(unit, self._factor_monic(f, seed))

    @functools.lru_cache(maxsize=1 << 17)
    def _factor_monic(self, f: Poly, seed: int) -> tuple[tuple[Poly, int], ...]:
        rng = random.Random(seed)
        acc: dict[Poly, int] = {}
        for g, e in self._squarefree_decomposition(f):
            for h, d in self._distinct_degree(g):
                for P in self._equal_degree(h, d, rng):
                    acc[P] = acc.get(P, 0) + e
        return tuple(sorted(acc.items(), key=lambda item: self.sort_key(item[0])))

    def is_squarefree(self, f: Poly) -> bool:
        if not f:
            raise ValueError("zero polynomial")
        if len(f) == 1:
            return True
        df = self.derivative(f)
        if df:
            return self.gcd(f, df) == ONE
        return all(e == 1 for _, e in self.factor(f).factors)

    def moebius(self, f: Poly) -> int:
        fac = self.factor(f).factors
        if any(e > 1 for _, e in fac):
            return 0
        return -1 if len(fac) % 2 else 1

    def norm_size(self, f: Poly) -> int:
        """|f| = Q^deg f for the ring's own field size Q."""
        return self.Q ** (len(f) - 1)

    def euler_phi_prime_power(self, P: Poly, i: int) -> int:
        size = self.norm_size(P)
        return size ** (i - 1) * (size - 1)

    def prime_count(self, d: int) -> int:
        if d < 1:
            raise ValueError("degree must be >= 1")
        total = sum(_small_moebius(e) * self.Q ** (d // e) for e in range(1, d + 1) if d % e == 0)
        return total // d

    def primes(self, d: int) -> list[Poly]:
        """Monic irreducibles of degree ``d`` in enumeration order (sieved, cached)."""
        if d in self._prime_cache:
            return self._prime_cache[d]
        if d == 1:
            out = list(self.enumerate_monic(1))
        else:
            composite = bytearray(self.Q ** d)
            for e in range(1, d // 2 + 1):
                for P in self.primes(e):
                    for g in self.enumerate_monic(d - e):
                        composite[self.index(self.mul(P, g))] = 1
            out = [self.from_index(d, k) for k in range(self.Q ** d) if not composite[k]]
        self._prime_cache[d] = out
        return out

    def primes_upto(self, d: int) -> list[Poly]:
        out = []
        for e in range(1, d + 1):
            out.extend(self.primes(e))
        return out

    def factored_monics(self, d: int, exponent_cap=None, primes=None):
        """Yield the factorization ``((P, e), ...)`` of every monic of degree ``d``.

        Each monic appears once, primes in canonical order.  ``exponent_cap(P)``
        bounds the exponent of ``P`` (``None`` means unbounded), which prunes
        the walk to the polynomials whose factorizations satisfy the caps.
        ``primes`` optionally restricts the primes allowed.
        """
        plist = primes if primes is not None else self.primes_upto(d)
        degs = [len(P) - 1 for P in plist]
        caps = [exponent_cap(P) if exponent_cap else None for P in plist]
        stack: list[tuple[Poly, int]] = []

        def walk(start: int, left: int):
            if left == 0:
                yield tuple(stack)
                return
            for j in range(start, len(plist)):
                dj = degs[j]
                if dj > left:
                    break
                cap = caps[j]
                e = 1
                while dj * e <= left and (cap is None or e <= cap):
                    stack.append((plist[j], e))
                    yield from walk(j + 1, left - dj * e)
                    stack.pop()
                    e += 1

        yield from walk(0, d)

    def expand(self, factors) -> Poly:
        out = ONE
        for P, e in factors:
            out = self.mul(out, self.pow(P, e))
        return out

    # ---------------------------------------------------- Galois structure
    def frobenius_conj(self, f: Poly) -> Poly:
        frob = self.ctx.frob
        return tuple(frob[c] for c in f)

    def in_base_subring(self, f: Poly) -> bool:
        p = self.p
        return all(c < p for c in f)

    def norm_to_base(self, f: Poly) -> Poly:
        n = self.mul(f, self.frobenius_conj(f))
        if not self.in_base_subring(n):
            raise NotGaloisStable(f"F F^sigma has an i-part: {n}")
        return n

    # ------------------------------------------------------------ text I/O
    def format_coeff(self, c: int) -> str:
        re, im = c % self.p, c // self.p
        return str(re) if im == 0 else f"({re}+{im}*i)"

    def format(self, f: Poly) -> str:
        if not f:
            return "0"
        terms = []
        for k in range(len(f) - 1, -1, -1):
            c = f[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(self.format_coeff(c))
                continue
            mono = "T" if k == 1 else f"T^{k}"
            terms.append(mono if c == 1 else f"{self.format_coeff(c)}*{mono}")
        return "+".join(terms)

    def parse(self, text: str) -> Poly:
        return _Parser(self, text).parse()


class _Parser:
    """Recursive descent for ``poly := term ('+' term)*``."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            got = self._peek() or "end of input"
            raise PolySyntaxError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def _uint(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            got = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise PolySyntaxError(f"expected unsigned integer, got {got!r}", start)
        return int(self.text[start:self.pos])

    def _coeff(self) -> int:
        p = self.ring.p
        if self._peek() == "(":
            self.pos += 1
            re = self._uint()
            im = 0
            if self._peek() == "+":
                self.pos += 1
                im_pos = self.pos
                im = self._uint()
                self._expect("*")
                self._expect("i")
                if not self.ring.ext and im % p:
                    raise CoefficientOutOfRange(
                        f"imaginary coefficient at position {im_pos} in a base-field polynomial")
            self._expect(")")
            return (re % p) + (im % p) * p
        return self._uint() % p

    def _mono(self) -> int:
        self._expect("T")
        if self._peek() == "^":
            self.pos += 1
            return self._uint()
        return 1

    def _term(self) -> tuple[int, int]:
        ch = self._peek()
        if ch == "T":
            return 1, self._mono()
        if ch.isdigit() or ch == "(":
            c = self._coeff()
            if self._peek() == "*":
                self.pos += 1
                return c, self._mono()
            return c, 0
        raise PolySyntaxError(f"unexpected {ch or 'end of input'!r}", self.pos)

    def parse(self) -> Poly:
        ring = self.ring
        acc: dict[int, int] = {}
        while True:
            c, k = self._term()
            acc[k] = ring.ctx.add[acc.get(k, 0)][c]
            if self._peek() == "+":
                self.pos += 1
                continue
            if self._peek():
                raise PolySyntaxError(f"unexpected {self._peek()!r}", self.pos)
            break
        if not acc:
            return ()
        out = [0] * (max(acc) + 1)
        for k, c in acc.items():
            out[k] = c
        return _strip(out)


@functools.lru_cache(maxsize=None)
def rings(p: int, omega_sign: int = 1) -> tuple[PolyRing, PolyRing]:
    """(base ring F_p[T], extension ring F_{p^2}[T]) sharing one field context."""
    ctx = make_field(p, omega_sign)
    return PolyRing(ctx, ext=False), PolyRing(ctx, ext=True)


def as_poly(coeffs: Sequence[int]) -> Poly:
    return _strip(list(coeffs))
