"""Desk-scale arithmetic behind the worked examples: Ramanujan tau, unit
roots of Hecke polynomials, points on y^2 + y = x^3 - x, Kronecker symbols,
and the GL_2 index bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotOrdinary
from .padic import PAdic, check_odd_prime, is_prime

# Coefficients a_1..a_18 of the newform in S_4(Gamma_0(5)); a_8 = 0.
WEIGHT4_LEVEL5 = (1, -4, 2, 8, -5, -8, 6, 0, -23, 20, 32, 16, -38, -24, -10, -64, 26, 92)

# tau(1..11) as displayed for the discriminant form.
TAU_DISPLAYED = (1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612)


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, f in enumerate(sieve) if f]


# Ramanujan tau


@dataclass(frozen=True)
class QExpansion:
    coefficients: tuple[int, ...]  # a_1, ..., a_bound
    weight: int
    level: int

    def __getitem__(self, n: int) -> int:
        if n < 1:
            raise IndexError("q-expansions are indexed from n = 1")
        return self.coefficients[n - 1]

    @property
    def bound(self) -> int:
        return len(self.coefficients)


def euler_product_series(bound: int) -> list[int]:
    """prod_{n>=1} (1 - q^n) through q^bound, by the pentagonal number theorem."""
    out = [0] * (bound + 1)
    k = 0
    while True:
        sign = -1 if k % 2 else 1
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > bound:
            break
        out[g1] = sign
        if k and g2 <= bound:
            out[g2] = sign
        k += 1
    return out


def _mul_truncated(a: list[int], b: list[int], n: int, bits: int) -> list[int]:
    """Product of integer series mod q^(n+1) via one big-integer multiplication.

    Every coefficient of a, b and a*b must be below 2^(bits-1) in absolute value.
    """
    nbytes = (bits + 7) // 8
    bits = 8 * nbytes

    def pack(c):
        pos = b"".join(max(v, 0).to_bytes(nbytes, "little") for v in c[: n + 1])
        neg = b"".join(max(-v, 0).to_bytes(nbytes, "little") for v in c[: n + 1])
        return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")

    half = 1 << (bits - 1)
    # shift every slot by 2^(bits-1) so that signed slots become nonnegative
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * (n + 1), "little")
    prod = pack(a) * pack(b)
    prod = (prod + offset) & ((1 << (bits * (n + 1))) - 1)
    raw = prod.to_bytes(nbytes * (n + 1), "little")
    return [
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half
        for i in range(n + 1)
    ]


def jacobi_cube_series(bound: int) -> list[int]:
    """prod_{n>=1} (1 - q^n)^3 = sum_m (-1)^m (2m+1) q^(m(m+1)/2) through q^bound."""
    out = [0] * (bound + 1)
    m = 0
    while m * (m + 1) // 2 <= bound:
        out[m * (m + 1) // 2] = (-1) ** m * (2 * m + 1)
        m += 1
    return out


def tau_series(bound: int) -> QExpansion:
    """Coefficients tau(1..bound) of q prod (1 - q^n)^24, as the 8th power of the cube."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n = bound - 1
    c = jacobi_cube_series(n)
    # every coefficient of c^k is at most (sum |c_i|)^k in absolute value
    l1 = sum(abs(x) for x in c)
    bits = 8 * l1.bit_length() + 2
    c2 = _mul_truncated(c, c, n, bits)
    c4 = _mul_truncated(c2, c2, n, bits)
    c8 = _mul_truncated(c4, c4, n, bits)
    return QExpansion(tuple(c8), weight=12, level=1)


def tau_series_naive(bound: int) -> list[int]:
    """Reference: multiply (1 - q^n) twenty-four times for each n.  O(bound^2)."""
    n = bound - 1
    s = [1] + [0] * n
    for m in range(1, n + 1):
        for _ in range(24):
            for i in range(n, m - 1, -1):
                s[i] -= s[i - m]
    return s


def ordinary_primes_delta(bound: int, tau: QExpansion | None = None) -> list[int]:
    if bound < 2:
        raise ValueError("bound must be >= 2")
    if tau is None or tau.bound < bound:
        tau = tau_series(bound)
    return [p for p in primes_upto(bound) if tau[p] % p]


def hecke_unit_root(a_p: int, p: int, k: int, N: int) -> PAdic:
    """Unit root of X^2 - a_p X + p^(k-1) in Z_p, Hensel-lifted from a_p mod p."""
    check_odd_prime(p)
    if a_p % p == 0:
        raise NotOrdinary(f"a_p = {a_p} is divisible by p = {p}")
    q = p**N
    c = p ** (k - 1)
    alpha = a_p % p
    for _ in range(N.bit_length() + 1):
        f = alpha * alpha - a_p * alpha + c
        df = 2 * alpha - a_p
        alpha = (alpha - f * pow(df, -1, q)) % q
    return PAdic(p, N, alpha)


# the curve y^2 + y = x^3 - x


@dataclass(frozen=True)
class CurveCount:
    p: int
    count: int

    @property
    def a_p(self) -> int:
        return self.p + 1 - self.count


def count_points_37a(p: int) -> CurveCount:
    """#E(F_p) including infinity; odd p via (2y+1)^2 = 4x^3 - 4x + 1 and a square table."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        affine = sum(1 for x in range(2) for y in range(2) if (y * y + y - x**3 + x) % 2 == 0)
        return CurveCount(p, affine + 1)
    roots = [0] * p
    for y in range(p):
        roots[y * y % p] += 1
    affine = sum(roots[(4 * x**3 - 4 * x + 1) % p] for x in range(p))
    return CurveCount(p, affine + 1)


def count_points_37a_bruteforce(p: int) -> CurveCount:
    """Independent count: y outer, x inner, the equation as given."""
    affine = 0
    for y in range(p):
        lhs = (y * y + y) % p
        for x in range(p):
            if (x * x * x - x) % p == lhs:
                affine += 1
    return CurveCount(p, affine + 1)


@dataclass(frozen=True)
class PrimeRecord37a:
    p: int
    a_p: int
    split_in_K: bool  # K = Q(sqrt(-3))
    zero_over_Q: bool  # a_p != 1
    zero_over_K: bool  # split: a_p != 1; inert: a_p^2 != 1
    admissible: bool


def admissible_primes_37a(bound: int, *, records: bool = False):
    """Primes p <= bound with p > 3, p != 37 and a_p not in {0, 1, -1}."""
    if bound > 10**4:
        raise ValueError("naive enumeration is limited to bound <= 10^4")
    out = []
    for p in primes_upto(bound):
        a = count_points_37a(p).a_p
        split = kronecker(-3, p) == 1
        rec = PrimeRecord37a(
            p=p,
            a_p=a,
            split_in_K=split,
            zero_over_Q=a != 1,
            zero_over_K=(a != 1) if split else (a * a != 1),
            admissible=p > 3 and p != 37 and a not in (0, 1, -1),
        )
        out.append(rec)
    if records:
        return out
    return [rec.p for rec in out if rec.admissible]


# Kronecker symbol and root-number signs


def kronecker(D: int, n: int) -> int:
    """The Kronecker symbol (D|n)."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D|n) for odd n > 0
    a = D % n if n > 1 else 0
    if n == 1:
        return result
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


def odd_corank_fields_condition(N_f: int, D: int) -> bool:
    """Odd Selmer corank over K = Q(sqrt(D)) for imaginary K: chi_K(N_f) = 1."""
    if D >= 0:
        raise ValueError("D must be a negative discriminant")
    return kronecker(D, N_f) == 1


# GL_2 index bound


@dataclass(frozen=True)
class GL2Check:
    q: int
    index: int
    gl2_order: int
    borel_order: int
    threshold: Fraction
    passes: bool


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    for p in primes_upto(math.isqrt(q) + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return True


def gl2_bound_check(q: int, index: int) -> GL2Check:
    if q < 3 or not is_prime_power(q):
        raise ValueError(f"q must be a prime power >= 3, got {q}")
    if index < 1:
        raise ValueError("index must be >= 1")
    gl2 = (q * q - 1) * (q * q - q)
    borel = q * (q - 1) ** 2
    threshold = Fraction(q + 1, 2)
    passes = index < threshold
    if passes and not Fraction(gl2, index) > 2 * borel:
        raise ArithmeticError(f"#GL_2/index <= 2 #B at q={q}, index={index}")
    return GL2Check(q, index, gl2, borel, threshold, passes)


# weight 4, level 5


@dataclass(frozen=True)
class Check:
    name: str
    tag: str
    passed: bool
    detail: str = ""


def weight4_level5_checks() -> list[Check]:
    a = dict(enumerate(WEIGHT4_LEVEL5, start=1))
    checks = []
    for p in (3, 7, 11, 13, 17):
        checks.append(Check(f"a_{p} = {a[p]} not divisible by {p}", "ordinary", a[p] % p != 0))
    for p in (2, 5):
        checks.append(Check(f"a_{p} = {a[p]} divisible by {p}", "non-ordinary", a[p] % p == 0))
    for p in (7, 11, 13, 17):
        m = p - 1
        ok = 2 % m != 1 and (2 + m // 2) % m != 1
        checks.append(Check(f"2 and 2+(p-1)/2 not 1 mod {m} (p={p})", "self-dual twists", ok))
    # at p = 3 the second twist exponent 2 + 1 = 3 is 1 mod 2; only p > 19 is ever used
    checks.append(Check("p=3: 2+(p-1)/2 = 3 is 1 mod 2 (excluded)", "self-dual twists", (2 + 1) % 2 == 1))
    # Hecke relations among the displayed coefficients catch transcription errors
    for m, n in ((2, 3), (2, 5), (3, 5), (2, 7), (2, 9), (3, 4)):
        checks.append(Check(f"a_{m * n} = a_{m} a_{n}", "Hecke", a[m * n] == a[m] * a[n]))
    for p, e in ((2, 2), (2, 3), (2, 4), (3, 2)):
        ok = a[p**e] == a[p] * a[p ** (e - 1)] - p**3 * a[p ** (e - 2)]
        checks.append(Check(f"a_{p ** e} = a_{p} a_{p ** (e - 1)} - {p}^3 a_{p ** (e - 2)}", "Hecke", ok))
    return checks
