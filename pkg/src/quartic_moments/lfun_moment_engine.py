"""L-polynomials of family characters, central values, and the first moment.

For chi = chi_F with deg F = n, L(v, chi) = sum_{d < 2n} c_d v^d with
c_d = sum over monic f in F_q[T] of degree d of chi(f).  Central values are
kept exactly as a + b q^{-1/2} with Gaussian-rational a, b.

The family scan evaluates chi_pi on base primes only (one vectorized
powmod per (pi, prime) pair, batched across moduli of equal degree) and
extends to all monic f through a table of their factorizations.
"""

from __future__ import annotations

import cmath
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _vec
from .dirichlet_series import a4_nsum, main_term
from .galois_fields import OMEGA_CONVENTION
from .gauss_sums import coefficient_sum
from .poly_ring import rings
from .quartic_chars import (DIVISOR_CLOSURE, QuarticCharacter, check_genus,
                            enumerate_family)
from .series import GaussRat

CHUNK_ROWS = 1 << 18


# ------------------------------------------------------------- values
@dataclass(frozen=True)
class CentralValue:
    """a + b q^{-1/2}."""

    a: GaussRat
    b: GaussRat
    q: int

    @property
    def float_value(self) -> complex:
        return complex(self.a) + complex(self.b) / math.sqrt(self.q)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def conj(self) -> "CentralValue":
        return CentralValue(self.a.conj(), self.b.conj(), self.q)

    def __add__(self, y: "CentralValue") -> "CentralValue":
        return CentralValue(self.a + y.a, self.b + y.b, self.q)

    @classmethod
    def zero(cls, q: int) -> "CentralValue":
        return cls(GaussRat(), GaussRat(), q)

    def to_json(self) -> dict:
        return {"a_re": _rat(self.a.re), "a_im": _rat(self.a.im),
                "b_re": _rat(self.b.re), "b_im": _rat(self.b.im),
                "float": self.float_value.real}


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class LPoly:
    """Coefficients c_0..c_{2n-1} as Gaussian integers (re, im); ``beyond`` holds c_{2n}."""

    modulus: tuple
    coeffs: tuple
    q: int
    beyond: tuple | None = None

    def value(self, v: complex) -> complex:
        return sum(complex(*c) * v ** d for d, c in enumerate(self.coeffs))

    def conj_value(self, v: complex) -> complex:
        return sum(complex(c[0], -c[1]) * v ** d for d, c in enumerate(self.coeffs))


def l_central_from_coeffs(coeffs, q: int) -> CentralValue:
    a_re = a_im = b_re = b_im = Fraction(0)
    for d, (re, im) in enumerate(coeffs):
        if d % 2 == 0:
            s = Fraction(1, q ** (d // 2))
            a_re += re * s
            a_im += im * s
        else:
            s = Fraction(1, q ** ((d - 1) // 2))
            b_re += re * s
            b_im += im * s
    return CentralValue(GaussRat(a_re, a_im), GaussRat(b_re, b_im), q)


def l_coeffs(chi: QuarticCharacter, extra: bool = True) -> LPoly:
    """Direct coefficient sums over every monic base f of each degree."""
    _, ext = rings(chi.p, chi.omega_sign)
    n = chi.degree
    coeffs = tuple(coefficient_sum(ext, chi.primes, d) for d in range(2 * n))
    beyond = coefficient_sum(ext, chi.primes, 2 * n) if extra else None
    return LPoly(chi.modulus, coeffs, chi.p, beyond)


def l_central(lp: LPoly) -> CentralValue:
    return l_central_from_coeffs(lp.coeffs, lp.q)


def omega_from_coeffs(lp: LPoly, n: int) -> complex:
    re, im = lp.coeffs[2 * n - 1]
    return -complex(re, im) * float(lp.q) ** (1 - n)


def fe_residual(lp: LPoly, n: int, omega: complex, v: complex) -> float:
    q = lp.q
    lhs = lp.value(v)
    rhs = (omega * q ** (n - 1) * v ** (2 * n - 2) * (1 - v) / (1 - 1 / (q * v))
           * lp.conj_value(1 / (q * v)))
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


@dataclass
class FEResult:
    max_residual: float
    self_dual_residual: float
    omega: complex
    samples: list


def verify_fe(lp: LPoly, n: int, num_samples: int = 5, seed: int = 0,
              omega: complex | None = None) -> FEResult:
    """Functional equation at seeded points 0.1 < |v| < 0.4, plus the self-dual point."""
    rng = random.Random(seed)
    if omega is None:
        omega = omega_from_coeffs(lp, n)
    pts = []
    while len(pts) < num_samples:
        r = rng.uniform(0.1, 0.4)
        v = cmath.rect(r, rng.uniform(0, 2 * math.pi))
        if abs(v - 1 / lp.q) < 1e-3:
            continue
        pts.append(v)
    worst = max(fe_residual(lp, n, omega, v) for v in pts)
    c = 1 / math.sqrt(lp.q)
    L = lp.value(c)
    Lb = lp.conj_value(c)
    sd = abs(L - omega * Lb) / max(abs(L), 1e-300) if abs(L) > 1e-12 else abs(L - omega * Lb)
    return FEResult(worst, sd, omega, pts)


def fe_accelerated_coeffs(ext_low, n: int, q: int, top=None):
    """Rebuild c_0..c_{2n-1} from c_0..c_{n-1} by reflection.

    Uses L(v) = (1 - v) L*(v) with L* of degree 2n-2 satisfying
    l_k = omega q^{k-n+1} conj(l_{2n-2-k}).  omega comes from the middle
    coefficient l_{n-1} = omega conj(l_{n-1}) when that is nonzero, else
    from ``top`` = c_{2n-1}.  Returns exact Gaussian rationals as GaussRat.
    """
    c = [GaussRat(re, im) for re, im in ext_low[:n]]
    ell = []
    acc = GaussRat()
    for x in c:
        acc = acc + x
        ell.append(acc)
    mid = ell[n - 1]
    if not mid.is_zero():
        omega = mid / mid.conj()
    else:
        if top is None:
            raise ValueError("middle coefficient vanishes; supply c_{2n-1}")
        omega = GaussRat(-top[0], -top[1]) * Fraction(1, q ** (n - 1))
    full = ell + [None] * (n - 1)
    for k in range(n, 2 * n - 1):
        full[k] = omega * full[2 * n - 2 - k].conj() * (Fraction(q) ** (k - n + 1))
    out = [full[0]]
    for k in range(1, 2 * n - 1):
        out.append(full[k] - full[k - 1])
    out.append(-full[2 * n - 2])
    return out


# ------------------------------------------------------- family engine
class FamilyTables:
    """chi_pi on every base prime of degree <= dmax, for a set of moduli pi."""

    def __init__(self, q: int, dmax: int, omega_sign: int = 1):
        self.q = q
        self.base, self.ext = rings(q, omega_sign)
        self.dmax = dmax
        self.bprimes = self.base.primes_upto(dmax)
        self.bprime_index = {P: j for j, P in enumerate(self.bprimes)}
        self.symbols: dict = {}
        self._build_factor_table()

    def _build_factor_table(self):
        degs, entries, exps, starts = [], [], [], []
        polys = []
        for d in range(self.dmax + 1):
            for fac in self.base.factored_monics(d):
                starts.append(len(entries))
                degs.append(d)
                polys.append(fac)
                for P, e in fac:
                    entries.append(self.bprime_index[P])
                    exps.append(e)
        self.f_deg = np.asarray(degs)
        self.f_start = np.asarray(starts)
        self.f_len = np.diff(np.append(self.f_start, len(entries)))
        self.entries = np.asarray(entries, dtype=np.int64)
        self.exps = np.asarray(exps, dtype=np.int64)
        self.num_f = len(degs)
        # degree blocks are contiguous because degrees are walked in order
        self.deg_start = np.searchsorted(self.f_deg, np.arange(self.dmax + 1))

    def add_moduli(self, pis):
        todo = [pi for pi in dict.fromkeys(pis) if pi not in self.symbols]
        by_deg: dict = {}
        for pi in todo:
            by_deg.setdefault(len(pi) - 1, []).append(pi)
        nP = len(self.bprimes)
        width = self.dmax + 1
        A_all = _vec.as_rows(self.bprimes, width)
        for d, pis_d in by_deg.items():
            per_chunk = max(1, CHUNK_ROWS // nP)
            for s in range(0, len(pis_d), per_chunk):
                chunk = pis_d[s:s + per_chunk]
                M = np.repeat(_vec.as_rows(chunk, d + 1), nP, axis=0)
                A = np.tile(A_all, (len(chunk), 1))
                out = _vec.batch_symbols(self.ext.ctx, A, M).reshape(len(chunk), nP)
                for pi, row in zip(chunk, out):
                    self.symbols[pi] = row

    def prime_values(self, members) -> np.ndarray:
        """chi_F on base primes, one row per member (-1 marks zero)."""
        out = np.zeros((len(members), len(self.bprimes)), dtype=np.int64)
        zero = np.zeros_like(out, dtype=bool)
        for r, chi in enumerate(members):
            for pi in chi.primes:
                row = self.symbols[pi]
                out[r] += row
                zero[r] |= row < 0
        out %= 4
        out[zero] = -1
        return out

    def coefficients(self, members, upto: int) -> np.ndarray:
        """Array (m, upto+1, 2) of Gaussian-integer coefficients c_0..c_upto."""
        chiP = self.prime_values(members)
        m = len(members)
        nf = int(self.deg_start[upto + 1]) if upto + 1 <= self.dmax else self.num_f
        has = self.f_len[:nf] > 0
        seg = self.f_start[:nf][has]
        nent = int(self.f_start[nf]) if nf < self.num_f else len(self.entries)
        ent = self.entries[:nent]
        ex = self.exps[:nent]
        vals = chiP[:, ent]
        zmask = vals < 0
        contrib = np.where(zmask, 0, vals * ex[None, :])
        sums = np.add.reduceat(contrib, seg, axis=1) % 4
        zeros = np.add.reduceat(zmask.astype(np.int64), seg, axis=1) > 0
        V = np.zeros((m, nf), dtype=np.int64)  # f = 1 keeps value exponent 0
        V[:, has] = np.where(zeros, -1, sums)
        starts = self.deg_start[:upto + 1]
        out = np.zeros((m, upto + 1, 2), dtype=np.int64)
        for k, (sre, sim) in enumerate(((1, 0), (0, 1), (-1, 0), (0, -1))):
            cnt = np.add.reduceat((V == k).astype(np.int64), starts, axis=1)
            out[:, :, 0] += sre * cnt
            out[:, :, 1] += sim * cnt
        return out


@dataclass
class MemberResult:
    modulus: tuple
    coeffs: tuple
    beyond: tuple
    central: CentralValue


def _member_chunk(args):
    q, n, omega_sign, moduli = args
    _, ext = rings(q, omega_sign)
    members = [QuarticCharacter(F, ext.factor(F).primes(), ext.norm_to_base(F), q, omega_sign)
               for F in moduli]
    tables = FamilyTables(q, 2 * n, omega_sign)
    tables.add_moduli([pi for chi in members for pi in chi.primes])
    out = []
    step = 256
    for s in range(0, len(members), step):
        block = members[s:s + step]
        arr = tables.coefficients(block, 2 * n)
        for chi, c in zip(block, arr):
            coeffs = tuple((int(x[0]), int(x[1])) for x in c[:2 * n])
            beyond = (int(c[2 * n][0]), int(c[2 * n][1]))
            out.append(MemberResult(chi.modulus, coeffs, beyond, l_central_from_coeffs(coeffs, q)))
    return out


def family_l_data(q: int, g: int, predicate: str = DIVISOR_CLOSURE, omega_sign: int = 1,
                  threads: int = 1) -> list[MemberResult]:
    """L-coefficients and central values of every member, in family order."""
    n = check_genus(g)
    _, ext = rings(q, omega_sign)
    moduli = [chi.modulus for chi in enumerate_family(ext, g, predicate)]
    if threads <= 1 or len(moduli) < 2 * threads:
        return _member_chunk((q, n, omega_sign, moduli))
    size = -(-len(moduli) // threads)
    parts = [(q, n, omega_sign, moduli[s:s + size]) for s in range(0, len(moduli), size)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_member_chunk, parts))
    return [r for part in results for r in part]


# --------------------------------------------------------------- moments
@dataclass
class MomentReport:
    q: int
    g: int
    n: int
    family_size: int
    moment: CentralValue
    main_magnitude: float
    main_paper_form: float
    P: float
    Z: float
    trunc_degree: int
    nonvanishing_count: int
    seed: int = 0
    runtime_ms: int = 0
    omega_convention: str = OMEGA_CONVENTION
    config: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def moment_float(self) -> float:
        return self.moment.float_value.real

    @property
    def ratio(self) -> float:
        return self.moment_float / self.main_magnitude

    @property
    def ratio_paper_form(self) -> float:
        return self.moment_float / self.main_paper_form

    def imaginary_is_zero(self) -> bool:
        return self.moment.a.im == 0 and self.moment.b.im == 0

    def to_json(self) -> dict:
        out = {
            "q": self.q, "g": self.g, "n": self.n, "family_size": self.family_size,
            "moment": self.moment.to_json(),
            "main_term": {"magnitude": self.main_magnitude, "paper_form": self.main_paper_form,
                          "P": self.P, "Z": self.Z, "trunc_degree": self.trunc_degree},
            "ratio_magnitude": self.ratio, "nonvanishing_count": self.nonvanishing_count,
            "omega_convention": self.omega_convention, "seed": self.seed,
            "runtime_ms": self.runtime_ms,
        }
        if self.config:
            out["config"] = self.config
        if self.extra:
            out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, d: dict) -> "MomentReport":
        m = d["moment"]
        cv = CentralValue(GaussRat(parse_rat(m["a_re"]), parse_rat(m["a_im"])),
                          GaussRat(parse_rat(m["b_re"]), parse_rat(m["b_im"])), d["q"])
        mt = d["main_term"]
        return cls(d["q"], d["g"], d["n"], d["family_size"], cv, mt["magnitude"],
                   mt["paper_form"], mt["P"], mt["Z"], mt["trunc_degree"],
                   d["nonvanishing_count"], d.get("seed", 0), d.get("runtime_ms", 0),
                   d.get("omega_convention", OMEGA_CONVENTION), d.get("config", {}))


def sum_central(values, q: int) -> CentralValue:
    total = CentralValue.zero(q)
    for v in values:
        total = total + v
    return total


def moment_direct(q: int, g: int, predicate: str = DIVISOR_CLOSURE, omega_sign: int = 1,
                  threads: int = 1, D: int = 25, dps: int = 40, seed: int = 0,
                  data: list | None = None) -> MomentReport:
    """Exact first moment over the family, compared with the Euler-product main term."""
    t0 = time.perf_counter()
    n = check_genus(g)
    if data is None:
        data = family_l_data(q, g, predicate, omega_sign, threads)
    moment = sum_central((r.central for r in data), q)
    nonzero = sum(1 for r in data if not r.central.is_zero())
    mt = main_term(q, g, D, dps)
    ms = int((time.perf_counter() - t0) * 1000)
    conv = OMEGA_CONVENTION if omega_sign == 1 else "Omega(i)=-x"
    return MomentReport(q, g, n, len(data), moment, mt.magnitude, mt.paper_form, mt.P, mt.Z,
                        D, nonzero, seed, ms, conv)


def moment_via_nsum(q: int, g: int) -> CentralValue:
    """Coefficient of u^n in A4(u, v) from the N-sum, specialized at v = q^{-1/2}."""
    n = check_genus(g)
    A = a4_nsum(q, n, 2 * n - 1)
    coeffs = []
    for b in range(2 * n):
        x = A[n, b]
        if x.re.denominator != 1 or x.im.denominator != 1:
            raise ArithmeticError("non-integral A4 coefficient")
        coeffs.append((int(x.re), int(x.im)))
    return l_central_from_coeffs(coeffs, q)


def nonvanishing_count(q: int, g: int, omega_sign: int = 1, data=None) -> int:
    if data is None:
        data = family_l_data(q, g, omega_sign=omega_sign)
    return sum(1 for r in data if not r.central.is_zero())
