"""Quartic residue symbols over F_{q^2}[T] and the genus-g family.

Symbol values are exponents ``k`` in Z/4 standing for ``i^k``; the zero value
is ``None``.  A family member is a monic square-free ``F`` in F_{q^2}[T] with
no nontrivial divisor in F_q[T] (the ``divisor-closure`` predicate); the
``literal-prime`` predicate only forbids prime factors lying in F_q[T] and
lets conjugate pairs ``pi * pi^sigma`` through.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple

import numpy as np

from . import _vec
from .errors import BadGenus, NotFamilyMember, NotIrreducible, NotMonic
from .poly_ring import ONE, Poly, PolyRing

SymbolExp = Optional[int]

DIVISOR_CLOSURE = "divisor-closure"
LITERAL_PRIME = "literal-prime"
PREDICATES = (DIVISOR_CLOSURE, LITERAL_PRIME)


def sym_mul(a: SymbolExp, b: SymbolExp) -> SymbolExp:
    if a is None or b is None:
        return None
    return (a + b) % 4


def sym_pow(a: SymbolExp, e: int) -> SymbolExp:
    if a is None:
        return None if e > 0 else 0
    return (a * e) % 4


def quartic_symbol(ring: PolyRing, a: Poly, pi: Poly, check: bool = True) -> SymbolExp:
    """chi_pi(a): ``None`` if pi | a, else k with a^((|pi|-1)/4) = Omega(i^k) mod pi."""
    if check:
        if len(pi) < 2 or pi[-1] != 1:
            raise NotMonic("symbol modulus must be monic of degree >= 1")
        if not ring.is_irreducible(pi):
            raise NotIrreducible(f"{ring.format(pi)} is not irreducible")
    r = ring.rem(a, pi)
    if not r:
        return None
    d = len(pi) - 1
    y = ring.powmod(r, (ring.Q ** d - 1) // 4, pi)
    if len(y) != 1:
        raise NotIrreducible(f"{ring.format(pi)} is not irreducible")
    return ring.ctx.omega_inverse(y[0])


class SymbolMemo:
    """Memo of chi_pi(a) keyed by (pi, a mod pi).

    Insert-only; concurrent writers can only store identical values.
    """

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self._cache: dict[tuple[Poly, Poly], SymbolExp] = {}

    def __call__(self, a: Poly, pi: Poly) -> SymbolExp:
        r = self.ring.rem(a, pi)
        key = (pi, r)
        try:
            return self._cache[key]
        except KeyError:
            val = quartic_symbol(self.ring, r, pi, check=False)
            self._cache[key] = val
            return val

    def __len__(self):
        return len(self._cache)


@dataclass(frozen=True)
class QuarticCharacter:
    """chi_F for a family modulus F = pi_1 ... pi_s (distinct, non-base, no conjugate pairs)."""

    modulus: Poly
    primes: Tuple[Poly, ...]
    conductor: Poly
    p: int
    omega_sign: int = 1

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def genus(self) -> int:
        return 3 * (self.degree - 1)


def char_eval(ring: PolyRing, chi: QuarticCharacter, a: Poly,
              memo: SymbolMemo | None = None) -> SymbolExp:
    """chi_F(a) as the product of the prime symbols; ``a`` may be a base polynomial."""
    sym = memo if memo is not None else (lambda x, pi: quartic_symbol(ring, x, pi, check=False))
    acc: SymbolExp = 0
    for pi in chi.primes:
        acc = sym_mul(acc, sym(a, pi))
        if acc is None:
            return None
    return acc


def hecke_eval(ring: PolyRing, N: Poly, F: Poly, memo: SymbolMemo | None = None) -> SymbolExp:
    """chi^{(N)}(F) = chi_F(N), multiplicative in the monic F via its factorization."""
    if not F or F[-1] != 1:
        raise NotMonic("hecke_eval needs a monic F")
    sym = memo if memo is not None else (lambda x, pi: quartic_symbol(ring, x, pi, check=False))
    acc: SymbolExp = 0
    for pi, e in ring.factor(F).factors:
        acc = sym_mul(acc, sym_pow(sym(N, pi), e))
        if acc is None:
            return None
    return acc


def is_family_member(ring: PolyRing, F: Poly,
                     predicate: str = DIVISOR_CLOSURE) -> tuple[bool, str]:
    """Membership test with a reason naming the violated clause ("ok" if none)."""
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}")
    if not F or F[-1] != 1:
        raise NotMonic("family moduli are monic")
    fac = ring.factor(F).factors
    if any(e > 1 for _, e in fac):
        return False, "not square-free"
    primes = {P for P, _ in fac}
    for P in primes:
        if ring.in_base_subring(P):
            return False, f"base prime {ring.format(P)}"
    if predicate == DIVISOR_CLOSURE:
        for P in primes:
            conj = ring.frobenius_conj(P)
            if conj in primes:
                return False, f"conjugate pair {ring.format(P)}, {ring.format(conj)}"
    return True, "ok"


def make_character(ring: PolyRing, F: Poly, predicate: str = DIVISOR_CLOSURE) -> QuarticCharacter:
    ok, reason = is_family_member(ring, F, predicate)
    if not ok:
        raise NotFamilyMember(reason)
    primes = ring.factor(F).primes()
    return QuarticCharacter(F, primes, ring.norm_to_base(F), ring.p, ring.ctx.omega_sign)


def check_genus(g: int) -> int:
    """Return n = g/3 + 1 or raise BadGenus."""
    if g < 0 or g % 3:
        raise BadGenus(f"genus {g} is not a non-negative multiple of 3")
    return g // 3 + 1


def enumerate_family(ring: PolyRing, g: int, predicate: str = DIVISOR_CLOSURE,
                     start: int = 0, stop: int | None = None) -> Iterator[QuarticCharacter]:
    """Family members of genus ``g`` in enumeration order of their moduli.

    ``start``/``stop`` slice the underlying monic enumeration for partitioned scans.
    """
    n = check_genus(g)
    for F in ring.enumerate_monic(n, start, stop):
        ok, _ = is_family_member(ring, F, predicate)
        if ok:
            primes = ring.factor(F).primes()
            yield QuarticCharacter(F, primes, ring.norm_to_base(F), ring.p, ring.ctx.omega_sign)


# ---------------------------------------------------------------- batched
def symbol_table(ring: PolyRing, pi: Poly, targets: list[Poly]) -> np.ndarray:
    """chi_pi(t) for every t in ``targets`` (exponents, -1 for zero), vectorized powmod."""
    if not targets:
        return np.zeros(0, dtype=np.int64)
    width = max(len(t) for t in targets)
    A = _vec.as_rows(targets, width)
    return _vec.batch_symbols(ring.ctx, A, pi)


def symbols_many_moduli(ring: PolyRing, moduli: list[Poly], targets: list[Poly]) -> np.ndarray:
    """chi_{moduli[r]}(targets[r]) row by row; moduli grouped by degree internally."""
    out = np.zeros(len(moduli), dtype=np.int64)
    by_deg: dict[int, list[int]] = {}
    for r, m in enumerate(moduli):
        by_deg.setdefault(len(m) - 1, []).append(r)
    for d, rows in by_deg.items():
        M = _vec.as_rows([moduli[r] for r in rows], d + 1)
        tg = [targets[r] for r in rows]
        A = _vec.as_rows(tg, max(1, max(len(t) for t in tg)))
        out[rows] = _vec.batch_symbols(ring.ctx, A, M)
    return out


@dataclass
class BaseSymbolTables:
    """chi_pi(P) for base primes P, cached per extension prime pi."""

    ring: PolyRing
    targets: list[Poly]
    _tables: dict[Poly, np.ndarray] = field(default_factory=dict)

    def __call__(self, pi: Poly) -> np.ndarray:
        tab = self._tables.get(pi)
        if tab is None:
            tab = symbol_table(self.ring, pi, self.targets)
            self._tables[pi] = tab
        return tab

    def character(self, primes) -> np.ndarray:
        """Exponent vector of chi_F on ``targets`` (-1 marks zero values)."""
        acc = np.zeros(len(self.targets), dtype=np.int64)
        zero = np.zeros(len(self.targets), dtype=bool)
        for pi in primes:
            t = self(pi)
            zero |= t < 0
            acc += t
        acc %= 4
        acc[zero] = -1
        return acc


def conjugate_pair_count(ring: PolyRing, n: int) -> int:
    """Number of degree-n moduli passing literal-prime but failing divisor-closure."""
    return sum(1 for F in ring.enumerate_monic(n)
               if is_family_member(ring, F, LITERAL_PRIME)[0]
               and not is_family_member(ring, F, DIVISOR_CLOSURE)[0])


def is_trivial_on(ring: PolyRing, F: Poly, polys) -> bool:
    primes = ring.factor(F).primes()
    chi = QuarticCharacter(F, primes, ring.norm_to_base(F), ring.p)
    return all(char_eval(ring, chi, a) in (0, None) for a in polys)


__all__ = [
    "SymbolExp", "quartic_symbol", "SymbolMemo", "QuarticCharacter", "char_eval",
    "hecke_eval", "is_family_member", "make_character", "enumerate_family", "check_genus",
    "symbol_table", "symbols_many_moduli", "BaseSymbolTables", "DIVISOR_CLOSURE",
    "LITERAL_PRIME", "PREDICATES", "sym_mul", "sym_pow", "ONE",
]
