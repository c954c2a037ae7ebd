import itertools

import numpy as np
import pytest

from oracles import F2, to_pairs
from quartic_moments.dirichlet_series import family_count_series
from quartic_moments.errors import BadGenus, NotFamilyMember, NotIrreducible, NotMonic
from quartic_moments.poly_ring import rings
from quartic_moments.quartic_chars import (LITERAL_PRIME, BaseSymbolTables, char_eval,
                                           enumerate_family, hecke_eval, is_family_member,
                                           make_character, quartic_symbol)

B3, E3 = rings(3)
I, MI = 3, 6
T_MINUS_I = (MI, 1)
T_PLUS_I = (I, 1)


def test_symbol_examples():
    assert quartic_symbol(E3, (1, 1), T_MINUS_I) == 3
    assert quartic_symbol(E3, (1,), T_MINUS_I) == 0
    assert quartic_symbol(E3, E3.mul(T_MINUS_I, (2, 1)), T_MINUS_I) is None
    with pytest.raises(NotMonic):
        quartic_symbol(E3, (1,), (MI, 2))
    with pytest.raises(NotIrreducible):
        quartic_symbol(E3, (1,), (1, 0, 1))


def test_symbols_match_pair_oracle():
    orc = F2(3)
    for pi in E3.primes_upto(2):
        for a in itertools.islice(E3.enumerate_all(2), 0, 729, 7):
            assert quartic_symbol(E3, a, pi) == orc.quartic_symbol(to_pairs(E3, a), to_pairs(E3, pi))


def test_symbol_multiplicative_and_quartic():
    polys = [a for a in E3.enumerate_all(2) if a][::3]
    for pi in E3.primes_upto(2):
        sym = {a: quartic_symbol(E3, a, pi, check=False) for a in polys}
        for a in polys:
            if sym[a] is not None:
                assert (4 * sym[a]) % 4 == 0 and sym[a] in range(4)
        for a, b in itertools.islice(itertools.product(polys, repeat=2), 0, None, 11):
            if sym[a] is None or sym[b] is None:
                continue
            assert quartic_symbol(E3, E3.mul(a, b), pi, check=False) == (sym[a] + sym[b]) % 4


def test_char_and_hecke_examples():
    chi = make_character(E3, T_MINUS_I)
    assert char_eval(E3, chi, (1,)) == 0
    assert char_eval(E3, chi, (1, 1)) == 3
    a, b = (2, 1), (1, 1, 1)
    assert char_eval(E3, chi, E3.mul(a, b)) == (char_eval(E3, chi, a) + char_eval(E3, chi, b)) % 4
    N = (1, 1)
    assert hecke_eval(E3, N, (1,)) == 0
    for P in E3.primes_upto(1):
        s = quartic_symbol(E3, N, P, check=False)
        want = None if s is None else (2 * s) % 4
        assert hecke_eval(E3, N, E3.mul(P, P)) == want
    other = F2(3).quartic_symbol([(1, 0), (1, 0)], to_pairs(E3, T_PLUS_I))
    assert hecke_eval(E3, N, E3.mul(T_MINUS_I, T_PLUS_I)) == (3 + other) % 4


def test_membership_examples():
    assert is_family_member(E3, T_MINUS_I) == (True, "ok")
    ok, why = is_family_member(E3, E3.parse("T^2+1"))
    assert not ok and why.startswith("conjugate pair")
    ok, why = is_family_member(E3, E3.mul((0, 1), T_MINUS_I))
    assert not ok and why == "base prime T"
    ok, why = is_family_member(E3, E3.mul(T_MINUS_I, T_MINUS_I))
    assert not ok and why == "not square-free"
    assert is_family_member(E3, E3.parse("T^2+1"), LITERAL_PRIME)[0]


def test_make_character_examples():
    chi = make_character(E3, T_MINUS_I)
    assert chi.conductor == (1, 0, 1) and chi.genus == 0
    F = E3.mul(T_MINUS_I, (MI + 1, 1))
    chi2 = make_character(E3, F)
    assert len(chi2.conductor) - 1 == 4 and chi2.genus == 3
    with pytest.raises(NotFamilyMember):
        make_character(E3, E3.parse("T^2+1"))


def test_enumerate_family_examples():
    linear = list(enumerate_family(E3, 0))
    assert sorted(chi.modulus for chi in linear) == sorted((c, 1) for c in range(9) if c >= 3)
    assert sum(1 for _ in enumerate_family(E3, 3)) == 48
    assert sum(1 for _ in enumerate_family(E3, 3, LITERAL_PRIME)) == 51
    with pytest.raises(BadGenus):
        list(enumerate_family(E3, 1))


def test_family_count_by_inclusion_exclusion():
    # 72 square-free quadratics, minus 21 with a base linear factor, minus 3 conjugate pairs
    sqf = sum(1 for F in E3.enumerate_monic(2) if E3.is_squarefree(F))
    with_base = sum(1 for F in E3.enumerate_monic(2) if E3.is_squarefree(F)
                    and any(E3.in_base_subring(P) for P in E3.factor(F).primes()))
    pairs = sum(1 for P in E3.primes(1) if not E3.in_base_subring(P)) // 2
    assert (sqf, with_base, pairs) == (72, 21, 3)
    assert sqf - with_base - pairs == 48


def test_member_invariants():
    for g in (0, 3, 6):
        for chi in enumerate_family(E3, g):
            prs = set(chi.primes)
            assert not any(E3.in_base_subring(P) for P in prs)
            assert not any(E3.frobenius_conj(P) in prs for P in prs)
            assert chi.conductor == E3.norm_to_base(chi.modulus)
            assert len(chi.conductor) - 1 == 2 * chi.degree


@pytest.mark.parametrize("q,gmax", [(3, 6), (7, 3)])
def test_evenness_on_members(q, gmax):
    _, E = rings(q)
    for g in range(0, gmax + 1, 3):
        for chi in enumerate_family(E, g):
            assert all(char_eval(E, chi, (a,)) == 0 for a in range(1, q))


def test_evenness_on_all_primes_q7():
    # every member's symbol is a sum over its primes, so this covers q=7, g <= 6
    _, E = rings(7)
    for P in E.primes_upto(3):
        assert all(quartic_symbol(E, (a,), P, check=False) == 0 for a in range(1, 7))


def test_trivial_symbol_on_base_moduli():
    sqf = [f for d in range(4) for f in B3.enumerate_monic(d) if B3.is_squarefree(f)]
    checked = 0
    for D in sqf:
        for N in sqf:
            if len(B3.gcd(D, N)) > 1:
                continue
            assert hecke_eval(E3, N, D) == 0
            checked += 1
    assert checked > 300


def test_conjugate_pair_restricts_trivially():
    targets = [f for d in range(5) for f in B3.enumerate_monic(d)]
    for P in E3.primes(1):
        if E3.in_base_subring(P):
            continue
        F = E3.mul(P, E3.frobenius_conj(P))
        for f in targets:
            if len(B3.gcd(f, E3.norm_to_base(P))) == 1:
                assert hecke_eval(E3, f, F) == 0


@pytest.mark.parametrize("g", [0, 3, 6])
def test_square_character_sums_vanish(g):
    n = g // 3 + 1
    for d in (2 * n, 2 * n + 1):
        targets = list(B3.enumerate_monic(d))
        tabs = BaseSymbolTables(E3, targets)
        for chi in enumerate_family(E3, g):
            e = tabs.character(chi.primes)
            live = e >= 0
            sq = (2 * e[live]) % 4
            assert np.count_nonzero(sq == 0) == np.count_nonzero(sq == 2)


def test_family_counts_match_series_q3():
    pred = family_count_series(3, 4)
    counts = [1] + [sum(1 for _ in enumerate_family(E3, 3 * (n - 1))) for n in (1, 2, 3)]
    assert counts == pred[:4]
    assert pred[:5] == [1, 6, 48, 456, 4056]


def test_family_counts_match_series_q7():
    _, E7 = rings(7)
    pred = family_count_series(7, 2)
    counts = [1] + [sum(1 for _ in enumerate_family(E7, 3 * (n - 1))) for n in (1, 2)]
    assert counts == pred
