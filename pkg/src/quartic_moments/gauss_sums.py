"""Polynomial Gauss sums G(V, f) = sum_{u mod f} chi_f(u) e(uV/f) with exact values.

``e(a/h)`` is ``zeta_p`` raised to the absolute trace of the ``T^{deg h - 1}``
coefficient of ``a mod h``.  Values live in :class:`~.cyclotomic.CycInt`.

Two evaluators are provided: a vectorized brute-force sum over all residues
and a factored evaluator that combines prime-power values by twisted
multiplicativity.  Prime Gauss sums ``G^(k)(1, P) = sum_C chi_P(C)^k e(C/P)``
are cached; above a size threshold they are obtained from one reference prime
per degree via ``G^(k)(1, P) = i^(k * chi_P(P')) * g_d(k)``.  That identity
comes from writing the 1/T coefficient of ``C/P`` as ``Tr(C(theta)/P'(theta))``.
"""

from __future__ import annotations

import cmath
import functools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _vec
from .cyclotomic import CycInt
from .errors import CostCeiling
from .poly_ring import ONE, Poly, PolyRing
from .quartic_chars import QuarticCharacter, quartic_symbol

DEFAULT_BUDGET = 10 ** 7


def _trace_table(ring: PolyRing) -> np.ndarray:
    if ring.ext:
        return ring.ctx.TRACE
    # prime-field codes are their own absolute trace
    t = np.arange(ring.ctx.Q, dtype=np.int64)
    t[ring.p:] = 0
    return t


def additive_char(ring: PolyRing, a: Poly, h: Poly) -> CycInt:
    """e(a/h) as a p-th root of unity."""
    n = len(h) - 1
    if n < 1:
        raise ValueError("additive character needs deg h >= 1")
    r = ring.rem(a, h)
    top = r[n - 1] if len(r) >= n else 0
    return CycInt.root(ring.p, 0, int(_trace_table(ring)[top]))


def _check_budget(size: int, budget: int | None):
    limit = DEFAULT_BUDGET if budget is None else budget
    if size > limit:
        raise CostCeiling(f"brute-force sum over {size} residues exceeds budget {limit}")


@functools.lru_cache(maxsize=4096)
def _residue_table(ring: PolyRing, f: Poly):
    """All residues mod f (rows, low degree first) and chi_f on each (-1 = zero)."""
    n = len(f) - 1
    Q = ring.Q
    idx = np.arange(Q ** n, dtype=np.int64)
    U = np.zeros((Q ** n, max(n, 1)), dtype=np.int64)
    for k in range(n):
        U[:, k] = (idx // Q ** k) % Q
    chi = np.zeros(Q ** n, dtype=np.int64)
    zero = np.zeros(Q ** n, dtype=bool)
    for P, e in ring.factor(f).factors:
        s = _vec.batch_symbols(ring.ctx, U, P)
        zero |= s < 0
        chi += e * s
    chi %= 4
    chi[zero] = -1
    return U, chi


def _top_coeff_functionals(ring: PolyRing, V: Poly, f: Poly) -> list[int]:
    """m_k = coefficient of T^{n-1} in T^k V mod f, k = 0..n-1."""
    n = len(f) - 1
    out = []
    cur = ring.rem(V, f)
    for _ in range(n):
        out.append(cur[n - 1] if len(cur) >= n else 0)
        cur = ring.rem((0,) + cur, f) if cur else cur
    return out


def gauss_sums_brute(ring: PolyRing, Vs: Sequence[Poly], f: Poly,
                     budget: int | None = None) -> list[CycInt]:
    """Brute-force G(V, f) for several V sharing the modulus f."""
    n = len(f) - 1
    if n < 0 or f[-1] != 1:
        raise ValueError("modulus must be monic")
    if n == 0:
        # one residue class, chi_1 = 1, e(0) = 1
        return [CycInt.integer(ring.p, 1) for _ in Vs]
    _check_budget(ring.Q ** n, budget)
    U, chi = _residue_table(ring, f)
    p = ring.p
    TR = _trace_table(ring)
    MUL = ring.ctx.MUL
    live = chi >= 0
    Ul, cl = U[live], chi[live]
    out = []
    for V in Vs:
        m = _top_coeff_functionals(ring, V, f)
        t = np.zeros(len(cl), dtype=np.int64)
        for k in range(n):
            if m[k]:
                t += TR[MUL[Ul[:, k], m[k]]]
        t %= p
        counts = np.bincount(cl * p + t, minlength=4 * p)
        out.append(CycInt.from_counts(p, counts))
    return out


def gauss_sum_brute(ring: PolyRing, V: Poly, f: Poly, budget: int | None = None) -> CycInt:
    if len(f) == 1:
        return CycInt.integer(ring.p, 1)
    return gauss_sums_brute(ring, [V], f, budget)[0]


# ------------------------------------------------------------------ cache
@dataclass
class GaussCache:
    """Prime Gauss sums G^(k)(1, P), k in {1, 2, 3}, keyed by (P, k).

    ``brute_limit``: primes with |P| up to this size are summed directly;
    larger ones go through the per-degree reference value.
    """

    ring: PolyRing
    brute_limit: int = 729
    budget: int | None = None
    _prime: dict = field(default_factory=dict)
    _degree_ref: dict = field(default_factory=dict)
    _pair: dict = field(default_factory=dict)

    def prime_sum_brute(self, P: Poly, k: int) -> CycInt:
        """sum_{C mod P} chi_P(C)^k e(C/P) by direct summation."""
        ring = self.ring
        n = len(P) - 1
        _check_budget(ring.Q ** n, self.budget)
        U, chi = _residue_table(ring, P)
        live = chi >= 0
        p = ring.p
        t = _trace_table(ring)[U[live, n - 1]]
        counts = np.bincount(((chi[live] * k) % 4) * p + t, minlength=4 * p)
        return CycInt.from_counts(p, counts)

    def derivative_symbol(self, P: Poly) -> int:
        return quartic_symbol(self.ring, self.ring.derivative(P), P, check=False)

    def degree_reference(self, d: int, k: int) -> CycInt:
        """g_d(k) = G^(k)(1, P0) * i^(-k chi_P0(P0')) for the first prime P0 of degree d."""
        key = (d, k)
        val = self._degree_ref.get(key)
        if val is None:
            P0 = self.ring.primes(d)[0]
            val = self.prime_sum_brute(P0, k).times_i_power(-k * self.derivative_symbol(P0))
            self._degree_ref[key] = val
        return val

    def prime_sum_reference(self, P: Poly, k: int) -> CycInt:
        d = len(P) - 1
        return self.degree_reference(d, k).times_i_power(k * self.derivative_symbol(P))

    def prime_sum(self, P: Poly, k: int) -> CycInt:
        k %= 4
        if k == 0:
            return CycInt.integer(self.ring.p, -1)
        key = (P, k)
        val = self._prime.get(key)
        if val is None:
            if self.ring.norm_size(P) <= self.brute_limit:
                val = self.prime_sum_brute(P, k)
            else:
                val = self.prime_sum_reference(P, k)
            self._prime[key] = val
        return val

    def pair_symbol(self, P: Poly, R: Poly) -> int | None:
        """chi_P(R), memoized."""
        key = (P, R)
        val = self._pair.get(key)
        if val is None and key not in self._pair:
            val = quartic_symbol(self.ring, R, P, check=False)
            self._pair[key] = val
        return val

    def warm(self, max_degree: int):
        for P in self.ring.primes_upto(max_degree):
            for k in (1, 2, 3):
                self.prime_sum(P, k)


def _valuation(ring: PolyRing, V: Poly, P: Poly) -> tuple[int | None, Poly]:
    """(alpha, V1) with V = V1 P^alpha, P not dividing V1; alpha None when V = 0."""
    if not V:
        return None, V
    a = 0
    while True:
        q, r = ring.divmod(V, P)
        if r:
            return a, V
        V = q
        a += 1


def prime_power_gauss(ring: PolyRing, V: Poly, P: Poly, i: int, cache: GaussCache) -> CycInt:
    """G(V, P^i) from the five-case table."""
    p = ring.p
    if i == 0:
        return CycInt.integer(p, 1)
    alpha, V1 = _valuation(ring, V, P)
    size = ring.norm_size(P)
    if alpha is None or i <= alpha:
        if i % 4:
            return CycInt.zero(p)
        return CycInt.integer(p, size ** (i - 1) * (size - 1))
    if i == alpha + 1:
        if i % 4 == 0:
            return CycInt.integer(p, -size ** (i - 1))
        s = cache.pair_symbol(P, V1)
        return (cache.prime_sum(P, i) * size ** alpha).times_i_power(-i * s)
    return CycInt.zero(p)


def gauss_sum_factored(ring: PolyRing, V: Poly, f: Poly, cache: GaussCache,
                       factors=None) -> CycInt:
    """G(V, f) from the factorization of f (``factors`` may be supplied)."""
    p = ring.p
    if factors is None:
        if len(f) == 1:
            return CycInt.integer(p, 1)
        factors = ring.factor(f).factors
    result = CycInt.integer(p, 1)
    for P, e in factors:
        loc = prime_power_gauss(ring, V, P, e, cache)
        if loc.is_zero():
            return loc
        result = result * loc
    # chi_{f1}(f2)^2 between distinct prime powers
    twist = 0
    for j in range(len(factors)):
        Pj, ej = factors[j]
        for l in range(j + 1, len(factors)):
            Pl, el = factors[l]
            twist += 2 * ej * el * cache.pair_symbol(Pj, Pl)
    return result.times_i_power(twist)


def prime_power_gauss_exhaustive(ring: PolyRing, Vs: Sequence[Poly], P: Poly, i: int) -> list[CycInt]:
    """G(V, P^i) for each V by exact summation over every residue mod P^i.

    The residues u = sum_k u_k T^k are walked one coefficient at a time while
    counting the pairs (u mod P, partial trace of the 1/T coefficient), so the
    cost is linear in deg P^i instead of exponential.  No case analysis is used.
    """
    p, Q = ring.p, ring.Q
    d = len(P) - 1
    f = ring.pow(P, i)
    n = d * i
    size = Q ** d
    # residues mod P indexed by base-Q digits
    res = [ring.from_index(d, r)[:-1] if d else () for r in range(size)]
    res = [tuple(r) + (0,) * (d - len(r)) for r in res]
    res_arr = np.array(res, dtype=np.int64).reshape(size, max(d, 1))
    weights = Q ** np.arange(d, dtype=np.int64)

    def index_of(rows):
        return (rows * weights).sum(axis=-1)

    ADD = ring.ctx.ADD
    add_idx = np.zeros((size, size), dtype=np.int64)
    for s in range(size):
        add_idx[:, s] = index_of(ADD[res_arr, res_arr[s]])
    chi = _vec.batch_symbols(ring.ctx, res_arr, P)
    TR = _trace_table(ring)
    MUL = ring.ctx.MUL
    funcs = np.array([_top_coeff_functionals(ring, V, f) for V in Vs], dtype=np.int64).reshape(len(Vs), n)
    state = np.zeros((len(Vs), size, p), dtype=np.int64)
    state[:, 0, 0] = 1
    tgrid = np.arange(p)
    cur = ONE
    for k in range(n):
        w = ring.rem(cur, P)
        w = tuple(w) + (0,) * (d - len(w))
        new = np.zeros_like(state)
        for c in range(Q):
            shift = index_of(MUL[c, np.array(w, dtype=np.int64)])
            # r -> add_idx[r, shift]; gather from the preimage
            inv = np.empty(size, dtype=np.int64)
            inv[add_idx[:, shift]] = np.arange(size)
            moved = state[:, inv, :]
            ts = TR[MUL[c, funcs[:, k]]]
            tidx = (tgrid[None, :] - ts[:, None]) % p
            new += np.take_along_axis(moved, tidx[:, None, :].repeat(size, axis=1), axis=2)
        state = new
        cur = (0,) + cur
    out = []
    for r in range(len(Vs)):
        raw = np.zeros((4, p), dtype=np.int64)
        for s in range(size):
            if chi[s] >= 0:
                raw[(chi[s] * i) % 4] += state[r, s]
        out.append(CycInt.from_counts(p, raw))
    return out


# ------------------------------------------------------ full characters
def _base_residues(p: int, n: int) -> np.ndarray:
    idx = np.arange(p ** n, dtype=np.int64)
    U = np.zeros((p ** n, n), dtype=np.int64)
    for k in range(n):
        U[:, k] = (idx // p ** k) % p
    return U


def _char_on_rows(ext: PolyRing, primes, U: np.ndarray) -> np.ndarray:
    acc = np.zeros(U.shape[0], dtype=np.int64)
    zero = np.zeros(U.shape[0], dtype=bool)
    for pi in primes:
        s = _vec.batch_symbols(ext.ctx, U, pi)
        zero |= s < 0
        acc += s
    acc %= 4
    acc[zero] = -1
    return acc


def gauss_full_char(ext: PolyRing, chi: QuarticCharacter, budget: int | None = None) -> CycInt:
    """sum_{a mod h} chi(a) e(a/h) over F_q[T], h the conductor, base-field trace."""
    h = chi.conductor
    m = len(h) - 1
    p = ext.p
    if m == 0:
        return CycInt.integer(p, 1)
    _check_budget(p ** m, budget)
    U = _base_residues(p, m)
    c = _char_on_rows(ext, chi.primes, U)
    live = c >= 0
    counts = np.bincount(c[live] * p + U[live, m - 1], minlength=4 * p)
    return CycInt.from_counts(p, counts)


def coefficient_sum(ext: PolyRing, primes, d: int) -> tuple[int, int]:
    """sum over monic base f of degree d of chi(f), as a Gaussian integer (re, im)."""
    p = ext.p
    if d == 0:
        return 1, 0
    U = np.concatenate([_base_residues(p, d), np.ones((p ** d, 1), dtype=np.int64)], axis=1)
    c = _char_on_rows(ext, primes, U)
    cnt = np.bincount(c[c >= 0], minlength=4)
    return int(cnt[0] - cnt[2]), int(cnt[1] - cnt[3])


@dataclass(frozen=True)
class Epsilon:
    tau: CycInt
    even: bool
    field_size: int

    @property
    def value(self) -> complex:
        if self.even:
            return 1 + 0j
        return self.tau.embed() / cmath.sqrt(self.field_size)


def tau_and_epsilon(ring: PolyRing, primes) -> tuple[CycInt, Epsilon]:
    """tau over the nonzero constants of ``ring`` for chi = prod chi_pi."""
    p = ring.p
    TR = _trace_table(ring)
    raw = np.zeros((4, p), dtype=np.int64)
    consts = range(1, ring.Q) if ring.ext else range(1, p)
    even = True
    for a in consts:
        k = 0
        for pi in primes:
            k += quartic_symbol(ring, (a,), pi, check=False)
        k %= 4
        even &= k == 0
        raw[k, TR[a]] += 1
    tau = CycInt.from_counts(p, raw)
    return tau, Epsilon(tau, bool(even), len(consts) + 1)


@dataclass(frozen=True)
class RootNumber:
    """omega two ways: -q^(1-n) c_{2n-1} and q^(-n) G(chi)."""

    value: complex
    top_coeff: tuple[int, int]
    gauss: CycInt
    q: int
    n: int
    gauss_value: complex
    discrepancy: float

    @property
    def exact_agreement(self) -> bool:
        re, im = self.top_coeff
        want = CycInt.integer(self.q, -self.q * re) + CycInt.integer(self.q, -self.q * im).times_i_power(1)
        return want == self.gauss


def root_number(ext: PolyRing, chi: QuarticCharacter) -> RootNumber:
    n = chi.degree
    q = ext.p
    re, im = coefficient_sum(ext, chi.primes, 2 * n - 1)
    val = -complex(re, im) * float(q) ** (1 - n)
    G = gauss_full_char(ext, chi)
    gval = G.embed() * float(q) ** (-n)
    return RootNumber(val, (re, im), G, q, n, gval, abs(val - gval))


__all__ = [
    "CycInt", "additive_char", "gauss_sum_brute", "gauss_sums_brute", "GaussCache",
    "gauss_sum_factored", "prime_power_gauss", "prime_power_gauss_exhaustive", "gauss_full_char", "tau_and_epsilon",
    "Epsilon", "root_number", "RootNumber", "coefficient_sum", "ONE",
]
