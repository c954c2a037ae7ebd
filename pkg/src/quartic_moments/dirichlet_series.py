"""The double series A4(u, v), family-size series, and the Euler constants P and Z.

A4(u, v) = sum over family moduli F (F = 1 included) and monic f in F_q[T] of
chi_F(f) u^{deg F} v^{deg f}.  It is computed directly from the family and,
independently, as a sum over N in F_q[T] of v^{deg N} times an Euler product
in u built from the Hecke symbols chi_{P2}(N).  Both are exact on the grid.

Euler products are truncated by prime degree: any prime of degree above the
u-truncation contributes 1 + O(u^{deg}) and is dropped without error.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import BadGenus, CostCeiling, Divergent
from .poly_ring import PolyRing, rings
from .quartic_chars import (DIVISOR_CLOSURE, BaseSymbolTables, check_genus,
                            is_family_member)
from .series import (BiSeries, GaussRat, gser_geometric, gser_inverse, gser_mul,
                     gser_one, gser_pow)

DEFAULT_DPS = 40
DEFAULT_BUDGET = 10 ** 7


def base_monics_upto(base: PolyRing, d: int) -> tuple[list, list]:
    """All monic base polynomials of degree <= d, and the degree of each."""
    polys, degs = [], []
    for k in range(d + 1):
        for f in base.enumerate_monic(k):
            polys.append(f)
            degs.append(k)
    return polys, degs


def _family_upto(ext: PolyRing, amax: int, predicate: str):
    for a in range(1, amax + 1):
        for F in ext.enumerate_monic(a):
            if is_family_member(ext, F, predicate)[0]:
                yield a, ext.factor(F).primes()


def _gauss_grid(umax: int, vmax: int, cells) -> BiSeries:
    s = BiSeries(umax, vmax)
    for a in range(umax + 1):
        for b in range(vmax + 1):
            re, im = cells[a][b]
            s[a, b] = GaussRat(re, im)
    return s


def a4_direct(q: int, umax: int, vmax: int, predicate: str = DIVISOR_CLOSURE,
              budget: int = DEFAULT_BUDGET) -> BiSeries:
    """Coefficient of u^a v^b: sum over members F of degree a of sum_{deg f = b} chi_F(f)."""
    base, ext = rings(q)
    work = sum(ext.Q ** a for a in range(umax + 1)) * sum(q ** b for b in range(vmax + 1))
    if work > budget * 100:
        raise CostCeiling(f"a4_direct work estimate {work} too large")
    targets, degs = base_monics_upto(base, vmax)
    degs = np.asarray(degs)
    tables = BaseSymbolTables(ext, targets)
    cells = [[[0, 0] for _ in range(vmax + 1)] for _ in range(umax + 1)]
    for b in range(vmax + 1):
        cells[0][b][0] = q ** b
    for a, primes in _family_upto(ext, umax, predicate):
        chi = tables.character(primes)
        live = chi >= 0
        cnt = np.zeros((vmax + 1, 4), dtype=np.int64)
        np.add.at(cnt, (degs[live], chi[live]), 1)
        for b in range(vmax + 1):
            cells[a][b][0] += int(cnt[b, 0] - cnt[b, 2])
            cells[a][b][1] += int(cnt[b, 1] - cnt[b, 3])
    return _gauss_grid(umax, vmax, cells)


def a4_nsum(q: int, umax: int, vmax: int, prime_cutoff: int | None = None) -> BiSeries:
    """A4 as sum_N v^{deg N} L(u, chi^(N)) / L(u^2, chi^(N)^2) * P(u, chi^(N)) * prod_{P1|N} (1-u^{deg P1})^-1.

    ``prime_cutoff`` (default ``umax``) bounds the degrees of the primes used in
    every Euler product; raising it must not change the grid.
    """
    base, ext = rings(q)
    D = umax if prime_cutoff is None else prime_cutoff
    n = umax
    targets, degs = base_monics_upto(base, vmax)
    tables = BaseSymbolTables(ext, targets)
    P2s = ext.primes_upto(D)
    P2_deg = np.array([len(P) - 1 for P in P2s])
    sym = np.stack([tables(P) for P in P2s], axis=0) if P2s else np.zeros((0, len(targets)), int)
    P2_index = {P: j for j, P in enumerate(P2s)}
    P1s = base.primes_upto(D)
    P1_split = []
    for P1 in P1s:
        # a base prime of degree d lies under gcd(d, 2) extension primes
        P1_split.append((len(P1) - 1, [P2_index[P] for P in ext.factor(P1).primes()]))

    cells = [[[0, 0] for _ in range(vmax + 1)] for _ in range(umax + 1)]
    for col, N in enumerate(targets):
        s = sym[:, col]
        # L-ratio, numerator and denominator grouped by (degree, symbol)
        groups = Counter((int(d), int(k)) for d, k in zip(P2_deg, s) if k >= 0)
        num = gser_one(n)
        den = gser_one(n)
        for (d, k), m in groups.items():
            num = gser_mul(num, gser_geometric(n, k, d, m))
            den = gser_mul(den, gser_geometric(n, 2 * k, 2 * d, m))
        ser = gser_mul(num, gser_inverse(den))
        # P(u, chi^(N))
        pgroups = Counter()
        for d1, idx in P1_split:
            pgroups[(d1, tuple(sorted((int(P2_deg[j]), int(s[j])) for j in idx)))] += 1
        for (d1, parts), m in pgroups.items():
            inner = gser_one(n)
            for d2, k in parts:
                if k >= 0:
                    # (1 + i^k u^d2)^-1 = (1 - i^(k+2) u^d2)^-1
                    inner = gser_mul(inner, gser_geometric(n, k + 2, d2, 1))
            fac = [(-x[0], -x[1]) for x in ([(0, 0)] * d1 + inner)[: n + 1]]
            fac[0] = (fac[0][0] + 1, fac[0][1])
            ser = gser_mul(ser, gser_pow(fac, m))
        # prod over base primes dividing N of (1 - u^deg)^-1
        if len(N) > 1:
            for P1 in base.factor(N).primes():
                ser = gser_mul(ser, gser_geometric(n, 0, len(P1) - 1, 1))
        b = degs[col]
        for a in range(n + 1):
            cells[a][b][0] += ser[a][0]
            cells[a][b][1] += ser[a][1]
    return _gauss_grid(umax, vmax, cells)


def family_count_series(q: int, umax: int, inner_sign: int = 1) -> list[int]:
    """Coefficients of zeta_{q^2}(u)/zeta_{q^2}(u^2) * prod_{P1} (1 - u^{d1} prod_{P2|P1} (1 + s u^{d2})^{-1}).

    ``inner_sign = 1`` is the Moebius-inversion form (s = +1).  ``inner_sign = -1``
    swaps in (1 - u^{d2})^{-1}, kept only to show that form miscounts.
    """
    base, ext = rings(q)
    n = umax
    Q = q * q
    # zeta(u)/zeta(u^2) = (1 - Q u^2)/(1 - Q u)
    ser = [(1 if j == 0 else Q if j == 1 else Q ** j - Q ** (j - 1), 0) for j in range(n + 1)]
    sign_shift = 2 if inner_sign == 1 else 0
    for d1 in range(1, n + 1):
        if d1 % 2:
            inner = gser_geometric(n, sign_shift, d1, 1)
        else:
            inner = gser_geometric(n, sign_shift, d1 // 2, 2)
        fac = [(-x[0], -x[1]) for x in ([(0, 0)] * d1 + inner)[: n + 1]]
        fac[0] = (fac[0][0] + 1, fac[0][1])
        ser = gser_mul(ser, gser_pow(fac, base.prime_count(d1)))
    return [x[0] for x in ser]


# ------------------------------------------------------------ Euler constants
@dataclass(frozen=True)
class EulerEval:
    value: mpmath.mpf
    trunc_degree: int
    delta_last: mpmath.mpf
    dps: int

    def __float__(self):
        return float(self.value)


def _prime_count(q: int, d: int) -> int:
    base, _ = rings(q)
    return base.prime_count(d)


def _a_factor(u, d: int):
    """prod_{P2 | P1} (1 + u^{deg P2})^{-1} for a base prime of degree d."""
    if d % 2:
        return 1 / (1 + u ** d)
    return 1 / (1 + u ** (d // 2)) ** 2


def _check_u(q: int, u):
    if abs(u) >= mpmath.mpf(1) / q:
        raise Divergent(f"|u| = {u} is not below 1/q")


def euler_P(q: int, u, D: int = 25, dps: int = DEFAULT_DPS) -> EulerEval:
    """P(u) = prod_{P1} (1 - u^{d} prod_{P2|P1} (1 + u^{deg P2})^{-1}), aggregated by degree."""
    with mpmath.workdps(dps):
        u = mpmath.mpf(u)
        _check_u(q, u)
        val = mpmath.mpf(1)
        prev = val
        for d in range(1, D + 1):
            prev = val
            val *= (1 - u ** d * _a_factor(u, d)) ** _prime_count(q, d)
        return EulerEval(+val, D, abs(val - prev), dps)


def euler_P_explicit(q: int, u, D: int = 8, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """Partial product of P(u) over explicitly enumerated and factored base primes."""
    base, ext = rings(q)
    with mpmath.workdps(dps):
        u = mpmath.mpf(u)
        val = mpmath.mpf(1)
        for P1 in base.primes_upto(D):
            inner = mpmath.mpf(1)
            for P2 in ext.factor(P1).primes():
                inner /= 1 + u ** (len(P2) - 1)
            val *= 1 - u ** (len(P1) - 1) * inner
        return +val


def _z_local(u, v4, d: int):
    a = _a_factor(u, d)
    x = v4 ** d
    return 1 + x / (1 - x) * a / (1 - u ** d * a)


def euler_Z(q: int, u, v, D: int = 25, dps: int = DEFAULT_DPS) -> EulerEval:
    """Z(u, v) through its Euler product over base primes, aggregated by degree."""
    with mpmath.workdps(dps):
        u, v = mpmath.mpf(u), mpmath.mpf(v)
        v4 = v ** 4
        if abs(v4) * q >= 1:
            raise Divergent("|v|^4 must be below 1/q")
        _check_u(q, u)
        val = mpmath.mpf(1)
        prev = val
        for d in range(1, D + 1):
            prev = val
            val *= _z_local(u, v4, d) ** _prime_count(q, d)
        return EulerEval(+val, D, abs(val - prev), dps)


def euler_Z_truncated(q: int, u, v, Nmax: int, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """The Euler product for Z with every term of N-degree above Nmax removed."""
    with mpmath.workdps(dps):
        u, v = mpmath.mpf(u), mpmath.mpf(v)
        # polynomial in t (t = marker of deg N), coefficients mpf
        ser = [mpmath.mpf(1)] + [mpmath.mpf(0)] * Nmax
        for d in range(1, Nmax + 1):
            a = _a_factor(u, d)
            w = a / (1 - u ** d * a)
            loc = [mpmath.mpf(0)] * (Nmax + 1)
            loc[0] = mpmath.mpf(1)
            for e in range(1, Nmax // d + 1):
                loc[d * e] = w
            for _ in range(_prime_count(q, d)):
                ser = [sum(ser[j] * loc[k - j] for j in range(k + 1) if loc[k - j]) for k in range(Nmax + 1)]
        v4 = v ** 4
        return +sum(c * v4 ** k for k, c in enumerate(ser))


def z_direct(q: int, u, v, Nmax: int = 12, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """Literal sum of Z's defining series over all monic N in F_q[T] with deg N <= Nmax.

    Every N is visited through its factorization; the weight of N depends on
    deg N and the degrees of the distinct primes dividing it, so visits are
    tallied by that signature before the high-precision sum.
    """
    base, _ = rings(q)
    tally: Counter = Counter()
    for k in range(Nmax + 1):
        for fac in base.factored_monics(k):
            tally[(k, tuple(sorted(len(P) - 1 for P, _ in fac)))] += 1
    with mpmath.workdps(dps):
        u, v = mpmath.mpf(u), mpmath.mpf(v)
        v4 = v ** 4
        total = mpmath.mpf(0)
        for (k, pdegs), count in tally.items():
            w = v4 ** k
            for d in pdegs:
                a = _a_factor(u, d)
                w *= a / (1 - u ** d * a)
            total += count * w
        return +total


@dataclass(frozen=True)
class MainTerm:
    magnitude: float
    paper_form: float
    P: float
    Z: float
    trunc_degree: int
    exact_magnitude: mpmath.mpf


def main_term(q: int, g: int, D: int = 25, dps: int = DEFAULT_DPS) -> MainTerm:
    """q^{2g/3} (q^2 - 1) P(q^-2) Z(q^-2, q^-1/2) and its negative (the printed residue form)."""
    if g < 0 or g % 3:
        raise BadGenus(f"genus {g} is not a non-negative multiple of 3")
    check_genus(g)
    with mpmath.workdps(dps):
        u = mpmath.mpf(1) / q ** 2
        v = 1 / mpmath.sqrt(q)
        P = euler_P(q, u, D, dps).value
        Z = euler_Z(q, u, v, D, dps).value
        mag = mpmath.mpf(q) ** (mpmath.mpf(2 * g) / 3) * (q * q - 1) * P * Z
        return MainTerm(float(mag), float(-mag), float(P), float(Z), D, mag)
