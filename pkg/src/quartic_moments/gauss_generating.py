"""Degree sums C(f, k) = sum over monic F of degree k of G(f, F), over F_{q^2}[T].

Only F whose square-full part divides f^2 can contribute (every other
prime-power local factor vanishes), so the default walk enumerates exactly
those F through their factorizations.  ``skip_zero=False`` walks every monic
F and factors it, as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .cyclotomic import CycInt
from .gauss_sums import GaussCache, gauss_sum_factored
from .poly_ring import Poly, PolyRing


@dataclass
class CoeffSeries:
    f: Poly
    coeffs: list  # CycInt per degree, index = degree (None where not computed)
    kmax: int
    degrees: tuple = ()

    def __getitem__(self, k: int) -> CycInt:
        return self.coeffs[k]


def _valuations(ring: PolyRing, f: Poly) -> dict:
    if len(f) == 1:
        return {}
    return {P: e for P, e in ring.factor(f).factors}


def degree_sum(ring: PolyRing, f: Poly, k: int, cache: GaussCache,
               skip_zero: bool = True, coprime: bool = False) -> CycInt:
    """sum_{deg F = k} G(f, F); ``coprime`` restricts to (F, f) = 1."""
    p = ring.p
    total = CycInt.zero(p)
    if k == 0:
        return CycInt.integer(p, 1)
    val = _valuations(ring, f)
    if skip_zero:
        if coprime:
            cap = lambda P: 0 if P in val else 1  # noqa: E731
        else:
            cap = lambda P: val.get(P, 0) + 1  # noqa: E731
        walk = ring.factored_monics(k, cap)
    else:
        walk = (ring.factor(F).factors for F in ring.enumerate_monic(k))
    acc = [0] * len(total.c)
    for fac in walk:
        if coprime and any(P in val for P, _ in fac):
            continue
        g = gauss_sum_factored(ring, f, None, cache, factors=fac)
        for j, x in enumerate(g.c):
            if x:
                acc[j] += x
    return CycInt(p, acc)


def c_coeffs(ring: PolyRing, f: Poly, kmax: int | None = None,
             cache: GaussCache | None = None, skip_zero: bool = True) -> CoeffSeries:
    """C(f, k) for k = 0..kmax (default kmax = deg f + 5)."""
    if kmax is None:
        kmax = len(f) - 1 + 5
    cache = cache or GaussCache(ring)
    coeffs = [degree_sum(ring, f, k, cache, skip_zero) for k in range(kmax + 1)]
    return CoeffSeries(f, coeffs, kmax, tuple(range(kmax + 1)))


def psi_class_coeffs(series: CoeffSeries, i: int) -> CoeffSeries:
    """The degrees congruent to ``i`` mod 4, in increasing order."""
    if i not in (0, 1, 2, 3):
        raise ValueError("class must be in 0..3")
    degs = tuple(range(i, series.kmax + 1, 4))
    return CoeffSeries(series.f, [series.coeffs[k] for k in degs], series.kmax, degs)


def reassemble(classes: Iterable[CoeffSeries], kmax: int) -> list:
    out = [None] * (kmax + 1)
    for cls in classes:
        for k, v in zip(cls.degrees, cls.coeffs):
            out[k] = v
    return out


def psi_tilde_coeffs(ring: PolyRing, f: Poly, kmax: int,
                     cache: GaussCache | None = None) -> CoeffSeries:
    """sum over F coprime to f of G(f, F), by degree."""
    cache = cache or GaussCache(ring)
    coeffs = [degree_sum(ring, f, k, cache, coprime=True) for k in range(kmax + 1)]
    return CoeffSeries(f, coeffs, kmax, tuple(range(kmax + 1)))


@dataclass
class RecurrenceCheck:
    k: int
    klass: int
    passed: bool
    lhs: CycInt  # C(f, k+4)
    rhs: CycInt  # Q^5 C(f, k)


@dataclass
class RecurrenceReport:
    """``checks``: the recurrence at every k >= i + 4B as stated.

    ``boundary``: for classes with B = 0, the first step implied by the
    rational form sum_j C(f, i+4j) x^j = P(x)(1 - Q^4 x)/(1 - Q^5 x) with
    deg P <= B, namely C(f, i+4) = (Q^5 - Q^4) C(f, i).
    """

    f: Poly
    checks: list = field(default_factory=list)
    boundary: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def corrected(self) -> list:
        """Checks implied by the rational form: the first step of a B = 0 class
        uses Q^5 - Q^4, first steps with B > 0 are left out, later steps use Q^5."""
        deg_f = len(self.f) - 1
        first = {c.klass: c for c in self.boundary}
        out = []
        for c in self.checks:
            B = (1 + deg_f - c.klass) // 4
            if c.k > c.klass + 4 * B:
                out.append(c)
            elif B == 0 and c.klass in first:
                out.append(first[c.klass])
        return out

    @property
    def corrected_passed(self) -> bool:
        cs = self.corrected()
        return bool(cs) and all(c.passed for c in cs)


def applicable_degrees(deg_f: int, kmax: int) -> list[tuple[int, int]]:
    """(k, class) pairs with k >= i + 4*floor((1 + deg f - i)/4) and k + 4 <= kmax."""
    out = []
    for i in range(4):
        B = (1 + deg_f - i) // 4
        k = i + 4 * B
        while k < 0:
            k += 4
        while k + 4 <= kmax:
            out.append((k, i))
            k += 4
    return sorted(out)


def verify_recurrence(ring: PolyRing, f: Poly, kmax: int | None = None,
                      series: CoeffSeries | None = None,
                      cache: GaussCache | None = None) -> RecurrenceReport:
    """Check C(f, k+4) = Q^5 C(f, k) at every applicable k (Q = q^2)."""
    if series is None:
        series = c_coeffs(ring, f, kmax, cache)
    kmax = series.kmax
    factor = ring.Q ** 5
    rep = RecurrenceReport(f)
    for k, i in applicable_degrees(len(f) - 1, kmax):
        lhs, rhs = series[k + 4], series[k] * factor
        rep.checks.append(RecurrenceCheck(k, i, lhs == rhs, lhs, rhs))
    first_step = ring.Q ** 5 - ring.Q ** 4
    for i in range(4):
        if (1 + len(f) - 1 - i) // 4 == 0 and i + 4 <= kmax:
            lhs, rhs = series[i + 4], series[i] * first_step
            rep.boundary.append(RecurrenceCheck(i, i, lhs == rhs, lhs, rhs))
    return rep


def magnitude_report(ring: PolyRing, series: CoeffSeries) -> list[dict]:
    """|C(f, k)| against q^{3k} (1 + deg f); informational only."""
    q = ring.p
    rows = []
    for k, v in enumerate(series.coeffs):
        mag = abs(v.embed())
        scale = q ** (3 * k) * (len(series.f))
        rows.append({"k": k, "abs": mag, "scale": scale, "ratio": mag / scale})
    return rows
