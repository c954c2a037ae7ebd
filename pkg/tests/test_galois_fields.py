import itertools

import pytest

from quartic_moments.errors import DivisionByZero, NotPrime, NotQuarticRoot, WrongResidue
from quartic_moments.galois_fields import (Fq2Elem, field_arith, frobenius, make_field,
                                           omega_inverse, trace_to_prime)


def E(re, im, p=3):
    return Fq2Elem(re, im, p)


def test_make_field_small_prime():
    ctx = make_field(3)
    assert ctx.p == 3 and ctx.Q == 9
    assert ctx.elem(ctx.i_code) == E(0, 1)


@pytest.mark.parametrize("p,exc", [(5, WrongResidue), (4, NotPrime), (1, NotPrime), (13, WrongResidue)])
def test_make_field_rejects(p, exc):
    with pytest.raises(exc):
        make_field(p)


def test_arith_examples():
    assert field_arith(E(1, 1), E(1, -1), "mul") == E(2, 0)
    assert field_arith(E(1, 1), None, "pow", 3) == E(1, -1)
    with pytest.raises(DivisionByZero):
        field_arith(E(1, 0), E(0, 0), "div")


def test_frobenius_examples():
    assert frobenius(E(2, 0)) == E(2, 0)
    assert frobenius(E(0, 1)) == E(0, -1)
    assert frobenius(E(1, 1)) == E(1, -1) == E(1, 1) ** 3


def test_omega_inverse_examples():
    assert omega_inverse(E(1, 0)) == 0
    assert omega_inverse(E(-1, 0)) == 2
    assert omega_inverse(E(0, 1)) == 1
    assert omega_inverse(E(0, -1)) == 3
    with pytest.raises(NotQuarticRoot):
        omega_inverse(E(1, 1))


def test_trace_examples():
    assert trace_to_prime(E(0, 1)) == 0
    assert trace_to_prime(E(1, 0)) == 2
    assert trace_to_prime(E(1, 1)) == 2


@pytest.mark.parametrize("p", [3, 7, 11])
def test_field_axioms_against_pair_arithmetic(p):
    ctx = make_field(p)
    elems = [E(a, b, p) for b in range(p) for a in range(p)]
    i = ctx.elem(ctx.i_code)
    assert i * i == E(-1, 0, p)
    roots = {x for x in elems if x and x ** 4 == E(1, 0, p)}
    assert roots == {E(1, 0, p), i, E(-1, 0, p), -i}
    for x, y in itertools.product(elems, repeat=2):
        assert (x * y).code == ctx.code(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re)
        assert (x + y) - y == x
        if y:
            assert (x / y) * y == x
    for x in elems:
        # Frobenius is the p-th power map and an involution
        assert frobenius(x) == x ** p
        assert frobenius(frobenius(x)) == x
        assert trace_to_prime(x) == (2 * x.re) % p
        if x:
            assert x ** (p * p - 1) == E(1, 0, p)


def test_alternate_omega_sends_i_to_minus_x():
    ctx = make_field(3, -1)
    assert ctx.elem(ctx.i_code) == E(0, -1)
    assert ctx.omega_inverse(ctx.code(0, 2)) == 1
