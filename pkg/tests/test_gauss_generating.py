from quartic_moments.cyclotomic import CycInt
from quartic_moments.gauss_generating import (applicable_degrees, c_coeffs, degree_sum,
                                              magnitude_report, psi_class_coeffs, psi_tilde_coeffs,
                                              reassemble, verify_recurrence)
from quartic_moments.gauss_sums import GaussCache, gauss_sum_brute, gauss_sums_brute
from quartic_moments.poly_ring import rings

B3, E3 = rings(3)
T_MINUS_I = "T+(0+2*i)"
Q = 9


def brute_degree_sums(f, kmax, coprime=False):
    out = []
    for k in range(kmax + 1):
        Fs = [F for F in E3.enumerate_monic(k) if not coprime or len(E3.gcd(F, f)) == 1]
        out.append(sum((gauss_sum_brute(E3, f, F) for F in Fs), CycInt.zero(3)))
    return out


def test_first_coefficients(coeff_series):
    s = coeff_series("1")
    assert s[0] == 1
    assert s[1] == sum((gauss_sum_brute(E3, (1,), (c, 1)) for c in range(9)), CycInt.zero(3))


def test_small_degrees_match_brute():
    for text in ("T", T_MINUS_I, "T^2+1"):
        f = E3.parse(text)
        s = c_coeffs(E3, f, 2)
        assert s.coeffs == brute_degree_sums(f, 2)
        t = psi_tilde_coeffs(E3, f, 2)
        assert t.coeffs == brute_degree_sums(f, 2, coprime=True)


def test_skip_zero_walk_agrees_with_full_walk():
    cache = GaussCache(E3)
    for text in ("1", "T", T_MINUS_I):
        f = E3.parse(text)
        for k in range(4):
            assert degree_sum(E3, f, k, cache) == degree_sum(E3, f, k, cache, skip_zero=False)


def test_psi_tilde_restriction():
    f = E3.parse(T_MINUS_I)
    full = c_coeffs(E3, f, 1)
    tilde = psi_tilde_coeffs(E3, f, 1)
    assert tilde[1] == full[1] - gauss_sum_brute(E3, f, f)
    assert psi_tilde_coeffs(E3, (1,), 3).coeffs == c_coeffs(E3, (1,), 3).coeffs


def test_class_partition(coeff_series):
    s = coeff_series("1")
    classes = [psi_class_coeffs(s, i) for i in range(4)]
    assert reassemble(classes, s.kmax) == s.coeffs
    assert psi_class_coeffs(s, 0).coeffs == [s[0], s[4]] == [1, s[4]]
    assert psi_class_coeffs(c_coeffs(E3, (1,), 2), 3).coeffs == []


def test_applicable_degrees():
    # f = 1: B = floor((1 - i)/4) is 0 for i = 0, 1 and -1 for i = 2, 3
    assert applicable_degrees(0, 5) == [(0, 0), (1, 1)]
    assert applicable_degrees(1, 5) == [(0, 0), (1, 1)]


def test_rational_form_first_step(coeff_series):
    """First step of each B = 0 class: C(f, i+4) = (Q^5 - Q^4) C(f, i)."""
    for text in ("1", T_MINUS_I, "T"):
        rep = verify_recurrence(E3, E3.parse(text), series=coeff_series(text))
        assert rep.boundary and all(c.passed for c in rep.boundary)
        assert rep.corrected_passed


def test_exact_values(coeff_series):
    assert [x.as_integer() for x in coeff_series("1").coeffs] == [1, -27, 0, 0, 52488, -1417176]
    for text in (T_MINUS_I, "T"):
        assert [x.as_integer() for x in coeff_series(text).coeffs] == [1, 0, 243, 0, 52488, 0]
    assert 52488 == Q ** 5 - Q ** 4


def test_magnitude_report(coeff_series):
    rows = magnitude_report(E3, coeff_series("1"))
    assert [r["k"] for r in rows] == list(range(6))
    assert rows[0]["abs"] == 1
