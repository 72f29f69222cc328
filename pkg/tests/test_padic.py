import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwgrowth import NonUnit, NotASign, padic_invert, padic_make, unit_sign, valuation
from iwgrowth.padic import PAdic, is_prime


def egcd_inverse(a, m):
    # extended Euclid, written out so it does not share code with pow(a, -1, m)
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    assert r0 == 1
    return s0 % m


def test_make_reduces():
    x = padic_make(534612, 11, 1)
    assert x.value == 1


def test_make_zero_has_full_valuation():
    x = padic_make(0, 3, 6)
    assert x.value == 0 and x.valuation == 6


def test_tau2_even_without_padic_type():
    # p = 2 is outside the scalar ring; the divisibility is checked on integers
    assert -24 % 2 == 0 and valuation(-24, 2) == 3
    with pytest.raises(ValueError):
        padic_make(-24, 2, 3)


@pytest.mark.parametrize("p,N", [(2, 3), (9, 2), (1, 2), (3, 0), (15, 1)])
def test_make_rejects_bad_parameters(p, N):
    with pytest.raises(ValueError):
        padic_make(1, p, N)


def test_invert_examples():
    assert padic_invert(padic_make(1, 5, 3)).value == 1
    assert padic_invert(padic_make(2, 3, 2)).value == 5
    with pytest.raises(NonUnit):
        padic_invert(padic_make(3, 3, 4))


def test_unit_sign_examples():
    assert unit_sign(padic_make(1, 7, 3)) == 1
    assert unit_sign(padic_make(7**3 - 1, 7, 3)) == -1
    with pytest.raises(NotASign):
        unit_sign(padic_make(2, 5, 2))


primes = st.sampled_from([3, 5, 7, 11, 13])


@given(p=primes, N=st.integers(1, 8), n=st.integers(-(10**12), 10**12))
def test_invert_matches_extended_euclid(p, N, n):
    x = padic_make(n, p, N)
    if n % p == 0:
        with pytest.raises(NonUnit):
            padic_invert(x)
    else:
        inv = padic_invert(x)
        assert inv.value == egcd_inverse(n % p**N, p**N)
        assert (x * inv).value == 1


@given(p=primes, N=st.integers(1, 8), n=st.integers(-(10**12), 10**12))
def test_valuation_contract(p, N, n):
    x = padic_make(n, p, N)
    assert 0 <= x.valuation <= N
    assert (x.valuation == N) == (x.value == 0)
    assert x.is_unit() == (x.valuation == 0)


@given(p=primes, N=st.integers(1, 6), a=st.integers(-1000, 1000), b=st.integers(-1000, 1000))
def test_ring_operations_match_integers(p, N, a, b):
    x, y = padic_make(a, p, N), padic_make(b, p, N)
    q = p**N
    assert (x + y).value == (a + b) % q
    assert (x - y).value == (a - b) % q
    assert (x * y).value == (a * b) % q
    assert (-x).value == (-a) % q
    assert x.balanced() % q == a % q


def test_unit_sign_only_square_roots_of_one():
    p, N = 5, 3
    q = p**N
    roots = [v for v in range(q) if v * v % q == 1]
    assert roots == [1, q - 1]
    for v in range(q):
        x = PAdic(p, N, v)
        if v in roots:
            assert unit_sign(x) in (1, -1)
        else:
            with pytest.raises(NotASign):
                unit_sign(x)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
