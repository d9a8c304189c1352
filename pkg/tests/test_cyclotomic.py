from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feitlab._arith import divisors, units
from feitlab.cyclotomic import Cyclo, cyclotomic_polynomial, galois_apply, parse_cyclo, root_of_unity
from feitlab.errors import CycloParseError, NotCoprime


def polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_cyclotomic_polynomial_examples():
    assert cyclotomic_polynomial(1).coeffs == (-1, 1)
    assert cyclotomic_polynomial(2).coeffs == (1, 1)
    assert cyclotomic_polynomial(12).coeffs == (1, 0, -1, 0, 1)
    assert str(cyclotomic_polynomial(12)) == "x^4 - x^2 + 1"


@pytest.mark.parametrize("n", range(1, 61))
def test_product_of_cyclotomic_polynomials(n):
    prod = [1]
    for d in divisors(n):
        prod = polymul(prod, list(cyclotomic_polynomial(d).coeffs))
    assert prod == [-1] + [0] * (n - 1) + [1]
    assert cyclotomic_polynomial(n).coeffs[-1] == 1


def test_root_of_unity_examples():
    assert root_of_unity(1, 0) == 1
    assert root_of_unity(4, 1) * root_of_unity(4, 1) == root_of_unity(4, 2) == -1
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == -1


def test_ring_examples():
    z8 = root_of_unity(8)
    a = z8 - z8 ** 3
    assert a * a == 2
    assert z8 * root_of_unity(8, 7) == 1
    assert a + 0 == a and a * 1 == a
    assert str(a) == "E(8)-E(8)^3"


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8, 9, 12, 15, 24, 30])
def test_roots_sum_to_zero(n):
    total = Cyclo.zero(n)
    for i in range(n):
        total = total + root_of_unity(n, i)
    assert total == 0


def test_cross_context_equality_and_hash():
    # zeta_3 written at context 3 and at context 12
    a = root_of_unity(3)
    b = root_of_unity(12, 4)
    assert a == b and hash(a) == hash(b)
    assert hash(Cyclo.rational(Fraction(3, 2), 8)) == hash(Fraction(3, 2))
    assert root_of_unity(4) != root_of_unity(4, 3)


# -- random elements ----------------------------------------------------------

CONTEXTS = [1, 3, 4, 5, 7, 8, 9, 12, 15]
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def cyclos(draw, n=None):
    n = n or draw(st.sampled_from(CONTEXTS))
    terms = draw(st.lists(st.tuples(st.integers(0, n - 1), rationals), max_size=5))
    return Cyclo.from_exponents(n, terms)


@given(cyclos(), cyclos(), cyclos())
@settings(max_examples=60)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1


@given(st.sampled_from(CONTEXTS).flatmap(lambda n: st.tuples(cyclos(n), cyclos(n), st.just(n))), st.data())
@settings(max_examples=60)
def test_galois_is_ring_homomorphism(args, data):
    a, b, n = args
    k = data.draw(st.sampled_from([u for u in range(1, max(n, 2)) if all(u % p for p in range(2, n + 1) if n % p == 0)] or [1]))
    j = data.draw(st.sampled_from(units(n) or [0]))
    assert galois_apply(a + b, k) == galois_apply(a, k) + galois_apply(b, k)
    assert galois_apply(a * b, k) == galois_apply(a, k) * galois_apply(b, k)
    assert galois_apply(galois_apply(a, k), j) == galois_apply(a, k * j % n)


@given(cyclos(), st.integers(-3, 3))
def test_galois_fixes_rationals_and_identity(a, q):
    n = a.n
    assert galois_apply(a, 1) == a
    for k in units(n):
        assert galois_apply(Cyclo.rational(q, n), k) == q


def test_galois_not_coprime():
    with pytest.raises(NotCoprime):
        galois_apply(root_of_unity(6), 3)


@given(cyclos())
def test_reduction_idempotent_and_lift(a):
    again = Cyclo.from_exponents(a.n, a.terms())
    assert again.coeffs == a.coeffs
    lifted = a.lift(a.n * 4)
    assert lifted == a
    assert Cyclo.from_exponents(lifted.n, lifted.terms()).coeffs == lifted.coeffs


@given(cyclos())
def test_rational_iff_constant_only(a):
    assert a.is_rational() == all(c == 0 for c in a.coeffs[1:])


@given(cyclos())
def test_render_parse_round_trip(a):
    assert parse_cyclo(str(a)) == a


def test_parse_examples():
    assert parse_cyclo("E(8)-E(8)^3") * parse_cyclo("E(8)-E(8)^3") == 2
    assert parse_cyclo("-1/2*E(3)+2") == Cyclo.rational(2) - root_of_unity(3) / 2
    assert parse_cyclo("3") == 3
    for bad in ["", "E(", "2E(3)", "E(3)^", "x", "1/0"]:
        with pytest.raises((CycloParseError, ZeroDivisionError)):
            parse_cyclo(bad)
