"""Fixed-precision p-adic integers: residues in Z/p^N with valuation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonUnit, NotASign


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def valuation(n: int, p: int, cap: int | None = None) -> int:
    """p-adic valuation of an integer; 0 maps to ``cap`` (or raises if cap is None)."""
    if n == 0:
        if cap is None:
            raise ValueError("valuation of 0 is infinite")
        return cap
    v = 0
    while n % p == 0:
        n //= p
        v += 1
        if cap is not None and v >= cap:
            return cap
    return v


def check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p!r}")


def to_residue(x, p: int, N: int) -> int:
    """Reduce an int or a p-integral Fraction modulo p^N."""
    q = p**N
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise NonUnit(f"{x} is not p-integral for p={p}")
        return x.numerator * pow(x.denominator, -1, q) % q
    return int(x) % q


@dataclass(frozen=True)
class PAdic:
    p: int
    N: int
    value: int

    def __post_init__(self):
        q = self.p**self.N
        if not 0 <= self.value < q:
            object.__setattr__(self, "value", self.value % q)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def valuation(self) -> int:
        return valuation(self.value, self.p, cap=self.N)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def balanced(self) -> int:
        """Representative in (-p^N/2, p^N/2]."""
        q = self.modulus
        return self.value - q if self.value > q // 2 else self.value

    def _coerce(self, other) -> int:
        if isinstance(other, PAdic):
            if (other.p, other.N) != (self.p, self.N):
                raise ValueError("p-adic operands at different (p, N)")
            return other.value
        return to_residue(other, self.p, self.N)

    def _new(self, v: int) -> PAdic:
        return PAdic(self.p, self.N, v % self.modulus)

    def __add__(self, other):
        return self._new(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._new(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return padic_invert(self) ** (-e)
        return self._new(pow(self.value, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, PAdic):
            return (self.p, self.N, self.value) == (other.p, other.N, other.value)
        if isinstance(other, (int, Fraction)):
            return self.value == to_residue(other, self.p, self.N)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.N, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"PAdic({self.value} mod {self.p}^{self.N})"


def padic_make(n, p: int, N: int) -> PAdic:
    check_odd_prime(p)
    if N < 1:
        raise ValueError("precision N must be >= 1")
    return PAdic(p, N, to_residue(n, p, N))


def padic_invert(x: PAdic) -> PAdic:
    if not x.is_unit():
        raise NonUnit(f"{x!r} has valuation {x.valuation}")
    return PAdic(x.p, x.N, pow(x.value, -1, x.modulus))


def unit_sign(x: PAdic) -> int:
    """Return +1 or -1 for a square root of unity (p odd leaves no others)."""
    if x.value == 1:
        return 1
    if x.value == x.modulus - 1:
        return -1
    raise NotASign(f"{x!r} is neither 1 nor -1")
