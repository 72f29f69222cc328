from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwgrowth import (
    ActionSpec,
    IwElem,
    ParseError,
    PrecisionExhausted,
    SpecMismatch,
    augment,
    grouplike,
    iota,
    layer_reduce,
    parse_elem,
    parse_header,
    retruncate,
    serialize,
    sigma,
    sigma_iota,
    specialize,
    weierstrass_prepare,
)
from iwgrowth.iwalg import invert
from iwgrowth.sampling import random_elem, random_unit

from oracles import binomial_fraction, dict_mul, frac_mod, inverse_substitution, poly_divmod_rem

SPECS = [ActionSpec(3, 6, 12, "+-"), ActionSpec(5, 4, 8, "+-"), ActionSpec(11, 3, 6, "-+"), ActionSpec(3, 4, 6, "++-")]
seeds = st.integers(0, 2**32 - 1)
specs = st.sampled_from(SPECS)


def elem(spec, seed, **kw):
    return random_elem(spec, np.random.default_rng(seed), density=0.5, **kw)


# ActionSpec and construction


def test_spec_validation():
    with pytest.raises(ValueError):
        ActionSpec(2, 6, 12, "+-")
    with pytest.raises(ValueError):
        ActionSpec(3, 0, 12, "+")
    with pytest.raises(ValueError):
        ActionSpec(3, 6, 1, "+")
    with pytest.raises(ValueError):
        ActionSpec(3, 6, 12, "")
    with pytest.raises(ValueError):
        ActionSpec(3, 6, 12, "+x")


def test_guard_digits():
    # v_3(12!) = 5, so grouplike exponents carry 6 extra digits
    assert ActionSpec(3, 6, 12, "+").guard == 6
    assert ActionSpec(11, 6, 12, "+").guard == 2


def test_dense_storage_switches_to_object_for_large_moduli():
    assert ActionSpec(3, 6, 12, "+-").dtype == np.int64
    assert ActionSpec(11, 12, 12, "+-").dtype == object


def test_terms_are_sorted_and_pruned(spec2):
    a = IwElem.from_terms(spec2, {(2, 0): 5, (0, 1): 3**6, (1, 0): -1})
    assert list(a.terms) == [(1, 0), (2, 0)]
    assert a.terms[(1, 0)] == 3**6 - 1


# multiplication


def test_gamma_times_inverse_is_one(spec1):
    g = spec1.gen(0)
    assert g * iota(g) == spec1.one()


def test_coefficient_truncation(spec1):
    p, N = spec1.p, spec1.N
    assert spec1.const(p ** (N - 1)) * spec1.const(p) == spec1.zero()


def test_degree_truncation(spec1):
    U = spec1.var(0)
    assert U * spec1.monomial((spec1.D,)) == spec1.zero()


def test_mixed_specs_rejected(spec1, spec2):
    with pytest.raises(SpecMismatch):
        spec1.one() * ActionSpec(5, 6, 12, "+").one()
    with pytest.raises(SpecMismatch):
        spec1.one() + spec2.one()


@given(spec=specs, s1=seeds, s2=seeds)
def test_mul_matches_dict_oracle(spec, s1, s2):
    a, b = elem(spec, s1), elem(spec, s2)
    assert (a * b).terms == dict_mul(a.terms, b.terms, spec.p, spec.N, spec.D)


@given(spec=specs, s1=seeds, s2=seeds, s3=seeds)
def test_ring_axioms(spec, s1, s2, s3):
    a, b, c = elem(spec, s1), elem(spec, s2), elem(spec, s3)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == spec.zero()


@given(spec=specs, seed=seeds)
def test_unit_inverse(spec, seed):
    u = random_unit(spec, np.random.default_rng(seed))
    assert u * invert(u) == spec.one()


def test_power(spec1):
    g = spec1.gen(0)
    assert g**3 == grouplike(spec1, [3])
    assert g**-2 == grouplike(spec1, [-2])


# grouplike


def test_grouplike_trivial_exponent(spec2):
    assert grouplike(spec2, [0, 0]) == spec2.one()


def test_grouplike_generator(spec1):
    assert grouplike(spec1, [1]) == spec1.one() + spec1.var(0)


def test_grouplike_half_matches_binomial_oracle(spec1):
    g = grouplike(spec1, [Fraction(1, 2)])
    p, N, D = spec1.p, spec1.N, spec1.D
    for k in range(D + 1):
        assert g.coeff((k,)).value == frac_mod(binomial_fraction(Fraction(1, 2), k), p, N)
    assert g.coeff((1,)).value == frac_mod(Fraction(1, 2), p, N)
    assert g.coeff((2,)).value == frac_mod(Fraction(-1, 8), p, N)
    # the 3-adic expansion of 1/2 begins 2 + 3 + 3^2 + ...
    assert frac_mod(Fraction(1, 2), 3, 3) == 2 + 3 + 9


def test_grouplike_rejects_wrong_length(spec2):
    with pytest.raises(SpecMismatch):
        grouplike(spec2, [1])


exps = st.one_of(
    st.integers(-(10**9), 10**9),
    st.builds(Fraction, st.integers(-1000, 1000), st.sampled_from([1, 2, 4, 7, 8, 13, 16])),
)


@given(a=st.lists(exps, min_size=2, max_size=2), b=st.lists(exps, min_size=2, max_size=2))
def test_grouplike_homomorphism(a, b):
    spec = ActionSpec(3, 5, 8, "+-")
    assert grouplike(spec, [x + y for x, y in zip(a, b)]) == grouplike(spec, a) * grouplike(spec, b)


@given(e=st.integers(0, 40))
def test_grouplike_integer_matches_power(e):
    spec = ActionSpec(5, 4, 8, "+")
    assert grouplike(spec, [e]) == spec.gen(0) ** e


# involutions


def test_iota_of_U(spec1):
    image = iota(spec1.var(0))
    assert image.terms == {(k,): (-1) ** k % spec1.modulus for k in range(1, spec1.D + 1)}


def test_iota_fixes_constants(spec2):
    assert iota(spec2.const(7)) == spec2.const(7)


def test_iota_involution_example(spec1):
    U = spec1.var(0)
    a = spec1.const(2) + U + U * U
    assert iota(iota(a)) == a


def test_sigma_examples(spec2):
    S, T = spec2.var(0), spec2.var(1)
    assert sigma(S) == S
    assert sigma(T) == iota(T)
    assert sigma(iota(S)) == iota(S)
    assert sigma_iota(T) == T


@given(spec=specs, seed=seeds)
def test_iota_matches_substitution_oracle(spec, seed):
    a = elem(spec, seed)
    expect = inverse_substitution(a.terms, set(range(spec.d)), spec.p, spec.N, spec.D, spec.d)
    assert iota(a).terms == expect


@given(spec=specs, seed=seeds)
def test_sigma_matches_substitution_oracle(spec, seed):
    a = elem(spec, seed)
    axes = set(spec.variables("-"))
    assert sigma(a).terms == inverse_substitution(a.terms, axes, spec.p, spec.N, spec.D, spec.d)


@given(spec=specs, s1=seeds, s2=seeds)
def test_involutions_are_ring_automorphisms(spec, s1, s2):
    a, b = elem(spec, s1), elem(spec, s2)
    for xi in (iota, sigma, sigma_iota):
        assert xi(a * b) == xi(a) * xi(b)
        assert xi(a + b) == xi(a) + xi(b)
        assert xi(xi(a)) == a
    assert iota(sigma(a)) == sigma(iota(a)) == sigma_iota(a)


@given(spec=specs, seed=seeds)
def test_augmentation_is_involution_invariant(spec, seed):
    a = elem(spec, seed)
    assert augment(iota(a)) == augment(a)
    assert augment(sigma(a)) == augment(a)


# quotient maps


def test_specialize_examples(spec2):
    S, T = spec2.var(0), spec2.var(1)
    sub = ActionSpec(3, 6, 12, "+")
    assert specialize(grouplike(spec2, [0, 1]), "+") == sub.one()
    assert specialize(S * T + S, "+") == sub.var(0)
    assert specialize(S - iota(S), "-").is_zero()
    with pytest.raises(ValueError):
        specialize(S, "x")
    with pytest.raises(ValueError):
        specialize(ActionSpec(3, 6, 12, "++").var(0), "-")


@given(spec=specs, s1=seeds, s2=seeds, sign=st.sampled_from("+-"))
def test_specialize_is_homomorphism(spec, s1, s2, sign):
    a, b = elem(spec, s1), elem(spec, s2)
    assert specialize(a * b, sign) == specialize(a, sign) * specialize(b, sign)
    assert specialize(a + b, sign) == specialize(a, sign) + specialize(b, sign)


def test_augment_examples(spec2):
    assert augment(grouplike(spec2, [5, Fraction(-7, 2)])).value == 1
    assert augment(spec2.const(3) + spec2.var(0) * spec2.var(1)).value == 3


def test_layer_reduce_examples(spec1):
    U = spec1.var(0)
    r = layer_reduce(U**3, 1)
    q = 3**r.precision
    assert r.precision == 6
    assert r.coeffs == (0, -3 % q, -3 % q)
    assert layer_reduce(spec1.gen(0) ** 3, 1) == layer_reduce(spec1.one(), 1)
    a = spec1.const(4) + U * U
    assert layer_reduce(a, 0).coeffs == (augment(a).value,)


def test_layer_precision_tracks_truncation():
    # (U^13) in Z_p[U]/((1+U)^(p^k) - 1) has content 3^6, 5^3, 3^1, 11^1 in these cases
    assert layer_reduce(ActionSpec(3, 6, 12, "+").one(), 1).precision == 6
    assert layer_reduce(ActionSpec(5, 6, 12, "+").one(), 1).precision == 3
    assert layer_reduce(ActionSpec(3, 6, 12, "+").one(), 2).precision == 1
    assert layer_reduce(ActionSpec(11, 6, 12, "+").one(), 1).precision == 1


def test_layer_reduce_rejects_multivariate(spec2):
    with pytest.raises(ValueError):
        layer_reduce(spec2.one(), 1)


@given(seed=seeds, p=st.sampled_from([3, 5]), k=st.integers(0, 1))
def test_layer_reduce_matches_division_oracle(seed, p, k):
    spec = ActionSpec(p, 5, 12, "+")
    a = elem(spec, seed)
    r = layer_reduce(a, k)
    m = p**k
    # (1+U)^m - 1, low degree first
    omega = [0] + [comb(m, j) for j in range(1, m + 1)]
    rem = poly_divmod_rem([int(c) for c in a.coeffs], omega)
    q = p**r.precision
    assert [c % q for c in rem] == [c % q for c in r.coeffs]


@given(s1=seeds, s2=seeds, p=st.sampled_from([3, 5]), k=st.integers(0, 1))
def test_layer_reduce_is_homomorphism(s1, s2, p, k):
    spec = ActionSpec(p, 6, 12, "+")
    a, b = elem(spec, s1), elem(spec, s2)
    assert layer_reduce(a * b, k) == layer_reduce(a, k) * layer_reduce(b, k)
    assert layer_reduce(a + b, k) == layer_reduce(a, k) + layer_reduce(b, k)
    if k == 0:
        assert layer_reduce(a, 0).coeffs[0] % p**6 == augment(a).value


# zero test


def test_is_zero_examples(spec1):
    assert spec1.zero().is_zero()
    assert spec1.monomial((1,), 3**6).is_zero()
    assert not spec1.const(3**5).is_zero()


# Weierstrass preparation


def test_weierstrass_example(spec1):
    p, U = spec1.p, spec1.var(0)
    f = (U * U + spec1.const(p)) * spec1.gen(0)
    f = f.scale(p * p)
    w = weierstrass_prepare(f)
    assert (w.mu, w.lam) == (2, 2)
    assert w.distinguished == U * U + spec1.const(p)
    assert w.unit == spec1.gen(0)


def test_weierstrass_of_U(spec1):
    w = weierstrass_prepare(spec1.var(0))
    assert (w.mu, w.lam) == (0, 1)
    assert w.distinguished == spec1.var(0) and w.unit == spec1.one()


def test_weierstrass_zero_raises(spec1):
    with pytest.raises(PrecisionExhausted):
        weierstrass_prepare(spec1.const(3**6))


def test_weierstrass_degree_guard(spec1):
    with pytest.raises(PrecisionExhausted):
        weierstrass_prepare(spec1.monomial((spec1.D - 1,)))
    assert weierstrass_prepare(spec1.monomial((spec1.D - 2,))).lam == spec1.D - 2


def test_weierstrass_rejects_multivariate(spec2):
    with pytest.raises(ValueError):
        weierstrass_prepare(spec2.var(0))


@given(seed=seeds, p=st.sampled_from([3, 5, 7]), mu=st.integers(0, 2), lam=st.integers(0, 10))
def test_weierstrass_round_trip(seed, p, mu, lam):
    spec = ActionSpec(p, 6, 12, "+")
    rng = np.random.default_rng(seed)
    low = {(i,): p * int(rng.integers(0, p**5)) for i in range(lam)}
    P = IwElem.from_terms(spec, {**low, (lam,): 1})
    f = (P * random_unit(spec, rng)).scale(p**mu)
    w = weierstrass_prepare(f)
    assert (w.mu, w.lam) == (mu, lam)
    assert (w.distinguished * w.unit).scale(p**mu) == f
    coeffs = w.distinguished.terms
    assert coeffs[(lam,)] == 1 and max(e[0] for e in coeffs) == lam
    assert all(c % p == 0 for e, c in coeffs.items() if e[0] < lam)
    # P is determined to the reported precision
    q = p**w.precision
    assert all((coeffs.get((i,), 0) - P.terms.get((i,), 0)) % q == 0 for i in range(lam + 1))


# serialization


def test_serialize_example(spec2):
    S = spec2.var(0)
    a = S.scale(2) - S * S
    assert serialize(a) == "2*[1,0] -1*[2,0]"
    assert serialize(spec2.zero()) == "0"
    assert parse_elem(spec2, "2*[1,0] -1*[2,0]") == a


@given(spec=specs, seed=seeds)
def test_serialize_round_trip(spec, seed):
    a = elem(spec, seed)
    assert parse_elem(spec, serialize(a)) == a
    assert parse_header(spec.header()) == spec


@pytest.mark.parametrize("text", ["2*[1]", "x", "2*[1,0] 3*[1,0]", "2*[a,0]", "*[1,0]"])
def test_parse_elem_errors(spec2, text):
    with pytest.raises(ParseError):
        parse_elem(spec2, text)


@pytest.mark.parametrize("line", ["iwa v2 p=3 N=6 D=12 sig=+-", "iwa v1 p=4 N=6 D=12 sig=+", "iwa v1 p=3 N=6 D=12 sig="])
def test_parse_header_errors(line):
    with pytest.raises(ParseError):
        parse_header(line)


def test_retruncate(spec2):
    a = spec2.monomial((1, 1), 5 + 3**5) + spec2.monomial((12, 0))
    b = retruncate(a, N=4, D=8)
    assert b.spec == ActionSpec(3, 4, 8, "+-")
    assert b.terms == {(1, 1): 5}
    with pytest.raises(ValueError):
        retruncate(a, N=7)
