"""Acceptance suite: eleven criteria, each reported as one PASS/FAIL line.

Checks that fail exactly as written are kept as strict xfails next to the
corrected identity that does hold, so the printed line for such a criterion
reads FAIL and names the corrected statement.
"""

import functools
import os
import time

import mpmath
import pytest

from quartic_moments.dirichlet_series import (a4_direct, a4_nsum, euler_P, euler_P_explicit, euler_Z,
                                              euler_Z_truncated, family_count_series, z_direct)
from quartic_moments.gauss_generating import c_coeffs, verify_recurrence
from quartic_moments.gauss_sums import (GaussCache, gauss_full_char, gauss_sum_brute,
                                        gauss_sum_factored, gauss_sums_brute, prime_power_gauss,
                                        prime_power_gauss_exhaustive)
from quartic_moments.lfun_moment_engine import (LPoly, family_l_data, moment_direct, moment_via_nsum,
                                                verify_fe)
from quartic_moments.poly_ring import rings
from quartic_moments.quartic_chars import enumerate_family

B3, E3 = rings(3)
Q = 9
THREADS = os.cpu_count() or 1

# criterion number -> list of (label, passed, detail)
RESULTS: dict[int, list] = {}


def record(num, label, passed, detail=""):
    RESULTS.setdefault(num, []).append((label, bool(passed), detail))


def summary_lines():
    lines = []
    for num in sorted(RESULTS):
        parts = RESULTS[num]
        ok = all(p for _, p, _ in parts)
        body = "; ".join(f"{label}: {'ok' if p else 'FAILS'}{' (' + d + ')' if d else ''}"
                         for label, p, d in parts)
        lines.append(f"criterion {num:>2} {'PASS' if ok else 'FAIL'} | {body}")
    return lines


@functools.lru_cache(maxsize=None)
def l_data(q, g):
    t0 = time.perf_counter()
    data = family_l_data(q, g, threads=THREADS)
    return data, time.perf_counter() - t0


@functools.lru_cache(maxsize=None)
def report(q, g):
    data, secs = l_data(q, g)
    return moment_direct(q, g, data=data), secs


SERIES_SECONDS = {}


@functools.lru_cache(maxsize=None)
def series(text):
    t0 = time.perf_counter()
    out = c_coeffs(E3, E3.parse(text), 5)
    SERIES_SECONDS[text] = time.perf_counter() - t0
    return out


def stickelberger_sign(q):
    return -1 if q % 8 == 3 else 1


# ------------------------------------------------------------------- 1
def test_criterion_01_factored_equals_brute():
    t0 = time.perf_counter()
    Vs = list(E3.enumerate_all(2))          # zero and every V of degree <= 2
    cache = GaussCache(E3)
    cases = bad = 0
    first = None
    for d in range(4):
        for f in E3.enumerate_monic(d):
            for V, b in zip(Vs, gauss_sums_brute(E3, Vs, f)):
                cases += 1
                if gauss_sum_factored(E3, V, f, cache) != b:
                    bad += 1
                    first = first or (V, f)
    secs = time.perf_counter() - t0
    record(1, "factored = brute", bad == 0 and cases >= 5000, f"{cases} cases, {bad} mismatches")
    record(1, "runtime < 60 s", secs < 60, f"{secs:.1f} s")
    assert bad == 0, f"first mismatch V={first[0]} f={first[1]}"
    assert cases >= 5000 and secs < 60


# ------------------------------------------------------------------- 2
def test_criterion_02_prime_power_table():
    cache = GaussCache(E3)
    cells = mism = brute_groups = 0
    seen_cases = set()
    for P in E3.primes_upto(2):
        normP = Q ** (len(P) - 1)
        V1s = [V for V in E3.enumerate_all(1) if V and E3.rem(V, P)]
        for i in range(1, 6):
            for alpha in range(5):
                Vs = [E3.mul(V1, E3.pow(P, alpha)) for V1 in V1s] + [()]
                summed = prime_power_gauss_exhaustive(E3, Vs, P, i)
                if i * (len(P) - 1) <= 4:
                    assert summed == gauss_sums_brute(E3, Vs, E3.pow(P, i))
                    brute_groups += 1
                for V, x in zip(Vs, summed):
                    cells += 1
                    mism += x != prime_power_gauss(E3, V, P, i, cache)
                    # the five cases, with the closed-form values checked directly
                    if not V:
                        assert x == (normP ** (i - 1) * (normP - 1) if i % 4 == 0 else 0)
                    elif i <= alpha and i % 4 == 0:
                        assert x == normP ** (i - 1) * (normP - 1)
                        seen_cases.add("phi")
                    elif i <= alpha:
                        assert x == 0
                        seen_cases.add("zero-nonquartic")
                    elif i == alpha + 1 and i % 4 == 0:
                        assert x == -normP ** alpha
                        seen_cases.add("-|P|^(i-1)")
                    elif i == alpha + 1:
                        assert abs(abs(x.embed()) - normP ** (i - 0.5)) < 1e-6
                        seen_cases.add("primitive")
                    else:
                        assert x == 0
                        seen_cases.add("zero-deep")
    record(2, "five-case table", mism == 0 and len(seen_cases) == 5,
           f"{cells} cells, {brute_groups} groups also brute-forced, cases seen {len(seen_cases)}")
    assert mism == 0 and len(seen_cases) == 5


# ------------------------------------------------------------------- 3
def squarefree_base_moduli():
    return [f for d in range(5) for f in B3.enumerate_monic(d) if B3.is_squarefree(f)]


@pytest.mark.xfail(strict=True, reason="G_{q^2}(1,F) = (-3)^{deg F} at q=3; odd degrees carry a sign")
def test_criterion_03a_ext_gauss_sum_of_base_modulus_as_stated():
    bad = [f for f in squarefree_base_moduli() if gauss_sum_brute(E3, (1,), f) != 3 ** (len(f) - 1)]
    record(3, "G(1,F) = q^deg F as stated", not bad,
           f"{len(bad)} of {len(squarefree_base_moduli())} moduli differ, all of odd degree")
    assert not bad


def test_criterion_03b_ext_gauss_sum_with_sign():
    fs = squarefree_base_moduli()
    eps = stickelberger_sign(3)
    ok = all(gauss_sum_brute(E3, (1,), f) == (eps * 3) ** (len(f) - 1) for f in fs)
    record(3, "G(1,F) = (-q)^deg F", ok, f"{len(fs)} moduli")
    assert ok


def test_criterion_03c_full_char_sum_on_members():
    members = list(enumerate_family(E3, 3))
    ok = all(gauss_full_char(E3, chi) == gauss_sum_brute(E3, (1,), chi.modulus) for chi in members)
    record(3, "G(chi_F) = G(1,F), n=2", ok and len(members) == 48, f"{len(members)} members")
    assert ok and len(members) == 48


# ------------------------------------------------------------------- 4
@pytest.mark.xfail(strict=True, reason="C(1,4) = 9^5 - 9^4 = 52488")
def test_criterion_04a_degree_four_sum_as_stated():
    c14 = series("1")[4]
    record(4, "C(1,4) = 59049", c14 == 59049, f"computed {c14.as_integer()}")
    assert c14 == 59049


@pytest.mark.xfail(strict=True, reason="first step of each class follows Q^5 - Q^4")
def test_criterion_04b_recurrence_as_stated():
    fails = []
    for text in ("1", "T+(0+2*i)"):
        rep = verify_recurrence(E3, E3.parse(text), series=series(text))
        fails += [(text, c.k) for c in rep.checks if not c.passed]
    record(4, "C(f,k+4) = 9^5 C(f,k) as stated", not fails, f"fails at (f,k) {fails}")
    assert not fails


def test_criterion_04c_recurrence_from_rational_form():
    checked = []
    for text in ("1", "T+(0+2*i)"):
        rep = verify_recurrence(E3, E3.parse(text), series=series(text))
        checked += [c.passed for c in rep.corrected()]
    secs = sum(SERIES_SECONDS.values())
    ok = bool(checked) and all(checked) and series("1")[4] == Q ** 5 - Q ** 4
    record(4, "C(f,k+4) = (9^5 - 9^4) C(f,k) at the first step", ok, f"{len(checked)} checks")
    record(4, "runtime < 10 min", secs < 600, f"{secs:.1f} s")
    assert ok and secs < 600


# ------------------------------------------------------------------- 5
@pytest.mark.parametrize("q,umax,vmax", [(3, 3, 5), (7, 2, 3)])
def test_criterion_05_perron_identity(q, umax, vmax):
    A, N = a4_direct(q, umax, vmax), a4_nsum(q, umax, vmax)
    diff = A.diff(N)
    record(5, f"q={q} grid {umax}x{vmax}", not diff, f"{A.size()} coefficients")
    assert not diff


# ------------------------------------------------------------------- 6
@pytest.mark.parametrize("g", [0, 3, 6])
def test_criterion_06_cross_route_moments(g):
    direct = report(3, g)[0].moment
    nsum = moment_via_nsum(3, g)
    record(6, f"g={g}", direct == nsum, f"moment {direct.float_value.real:.6f}")
    assert direct == nsum


# ------------------------------------------------------------------- 7
@pytest.mark.parametrize("q,g", [(3, 0), (3, 3), (3, 6), (7, 0), (7, 3)])
def test_criterion_07_functional_equation(q, g):
    n = g // 3 + 1
    worst = worst_sd = worst_w = 0.0
    data = l_data(q, g)[0]
    for r in data:
        res = verify_fe(LPoly(r.modulus, r.coeffs, q, r.beyond), n, 5, seed=0)
        worst = max(worst, res.max_residual)
        worst_sd = max(worst_sd, res.self_dual_residual)
        worst_w = max(worst_w, abs(abs(res.omega) - 1))
    ok = worst < 1e-9 and worst_sd < 1e-9 and worst_w < 1e-9
    record(7, f"q={q} n={n}", ok, f"{len(data)} members, max residual {max(worst, worst_sd, worst_w):.1e}")
    assert ok


# ------------------------------------------------------------------- 8
def test_criterion_08_exactness():
    imag = all(report(3, g)[0].imaginary_is_zero() for g in (0, 3, 6, 9))
    imag &= all(report(7, g)[0].imaginary_is_zero() for g in (0, 3))
    record(8, "moments real", imag)
    top = all(r.beyond == (0, 0) for q, gs in ((3, (0, 3, 6, 9)), (7, (0, 3))) for g in gs
              for r in l_data(q, g)[0])
    record(8, "c_{2 deg F} = 0", top)
    pred = family_count_series(3, 4)
    counts = [1] + [len(l_data(3, g)[0]) for g in (0, 3, 6, 9)]
    record(8, "family counts", counts == pred and counts[1:3] == [6, 48], f"{counts[1:]}")
    assert imag and top and counts == pred and counts[1:3] == [6, 48]


# ------------------------------------------------------------------- 9
U = mpmath.mpf(1) / 9
V = 1 / mpmath.sqrt(3)
THIRD = mpmath.mpf(1) / 3
Z_POINTS = [(U, V), (U, THIRD), (mpmath.mpf(1) / 27, THIRD)]


@functools.lru_cache(maxsize=None)
def zd(i):
    u, v = Z_POINTS[i]
    return z_direct(3, u, v, 12)


def test_criterion_09a_stability_and_dual_path():
    with mpmath.workdps(40):
        dP = abs(euler_P(3, U, 25).value - euler_P(3, U, 20).value)
        dZ = abs(euler_Z(3, U, V, 25).value - euler_Z(3, U, V, 20).value)
        dual = abs(euler_P_explicit(3, U, 8) - euler_P(3, U, 8).value)
    record(9, "P stable D=20->25", dP < 1e-10, f"{float(dP):.1e}")
    record(9, "Z stable D=20->25", dZ < 1e-10, f"{float(dZ):.1e}")
    record(9, "dual-path P", dual < 1e-10, f"{float(dual):.1e}")
    assert dP < 1e-10 and dZ < 1e-10 and dual < 1e-10


@pytest.mark.parametrize("i", range(3))
def test_criterion_09b_direct_sum_vs_truncated_product(i):
    u, v = Z_POINTS[i]
    err = abs(zd(i) - euler_Z_truncated(3, u, v, 12))
    record(9, f"z_direct = product to same N-degree at point {i + 1}", err < 1e-10, f"{float(err):.1e}")
    assert err < 1e-10


@pytest.mark.parametrize("i", [
    pytest.param(0, marks=pytest.mark.xfail(strict=True, reason="tail of deg N > 12 is about 8.8e-7 at v^4 q = 1/3")),
    1, 2])
def test_criterion_09c_direct_sum_vs_converged_product(i):
    u, v = Z_POINTS[i]
    err = abs(zd(i) - euler_Z(3, u, v, 25).value)
    record(9, f"z_direct(Nmax=12) = converged Z at point {i + 1}", err < 1e-10, f"{float(err):.1e}")
    assert err < 1e-10


# ------------------------------------------------------------------ 10
def test_criterion_10_trend():
    rows = {g: report(3, g) for g in (3, 6, 9)}
    real_pos = all(r.imaginary_is_zero() and r.moment_float > 0 for r, _ in rows.values())
    dev = {g: abs(r.ratio - 1) for g, (r, _) in rows.items()}
    matches_magnitude = all(abs(r.ratio - 1) < abs(r.ratio_paper_form - 1) for r, _ in rows.values())
    g9_secs = rows[9][1]
    ratios = ", ".join(f"g={g}: {r.ratio:.4f}" for g, (r, _) in rows.items())
    record(10, "moment real and positive", real_pos)
    record(10, "|ratio-1| at g=9 <= at g=3", dev[9] <= dev[3], ratios)
    record(10, "data matches the positive main term", matches_magnitude)
    record(10, "g=9 run < 30 min", g9_secs < 1800, f"{g9_secs:.1f} s")
    assert real_pos and dev[9] <= dev[3] and g9_secs < 1800


# ------------------------------------------------------------------ 11
@pytest.mark.parametrize("q,g", [(3, 0), (3, 3), (3, 6), (3, 9), (7, 0), (7, 3)])
def test_criterion_11_nonvanishing(q, g):
    r = report(q, g)[0]
    record(11, f"q={q} g={g}", r.nonvanishing_count >= 1,
           f"{r.nonvanishing_count}/{r.family_size}")
    assert 1 <= r.nonvanishing_count <= r.family_size

