"""Truncated Iwasawa algebra Lambda = Z_p[[Gamma]] ~= Z_p[[U_1, ..., U_d]].

Every element lives in the quotient Lambda / ((p^N) + (U_1, ..., U_d)^(D+1)) and
all ring identities below hold exactly there.  A topological generator gamma_i
of Gamma corresponds to the grouplike 1 + U_i, and each variable carries a
sign recording whether sigma acts on gamma_i by gamma_i or by gamma_i^-1.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import NonUnit, ParseError, PrecisionExhausted, SpecMismatch
from .padic import PAdic, check_odd_prime, padic_invert, to_residue, valuation

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class ActionSpec:
    """Ring data (p, N, D) plus a +/- signature for the d variables."""

    p: int
    N: int
    D: int
    signature: str

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.N < 1:
            raise ValueError("precision N must be >= 1")
        if self.D < 2:
            raise ValueError("degree cap D must be >= 2")
        if not self.signature or set(self.signature) - {"+", "-"}:
            raise ValueError(f"signature must be a nonempty +/- string, got {self.signature!r}")

    @property
    def d(self) -> int:
        return len(self.signature)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    @property
    def guard(self) -> int:
        """Extra digits carried on grouplike exponents: v_p(D!) + 1."""
        return valuation(math.factorial(self.D), self.p) + 1

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.D + 1,) * self.d

    @cached_property
    def dtype(self):
        # int64 is exact while every accumulated sum of products stays below 2^62
        if (self.D + 1) ** self.d * self.modulus**2 < _INT64_SAFE:
            return np.int64
        return object

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean array selecting exponent vectors of total degree <= D."""
        grids = np.indices(self.shape).sum(axis=0)
        return grids <= self.D

    def variables(self, sign: str) -> list[int]:
        return [i for i, s in enumerate(self.signature) if s == sign]

    def sub(self, keep: list[int]) -> ActionSpec:
        return ActionSpec(self.p, self.N, self.D, "".join(self.signature[i] for i in keep))

    def with_precision(self, N: int) -> ActionSpec:
        return ActionSpec(self.p, N, self.D, self.signature)

    def header(self) -> str:
        return f"iwa v1 p={self.p} N={self.N} D={self.D} sig={self.signature}"

    # constructors living on ActionSpec keep call sites short
    def zero(self) -> IwElem:
        return IwElem(self, np.zeros(self.shape, dtype=self.dtype))

    def const(self, c) -> IwElem:
        arr = np.zeros(self.shape, dtype=self.dtype)
        arr[(0,) * self.d] = to_residue(c, self.p, self.N)
        return IwElem(self, arr)

    def one(self) -> IwElem:
        return self.const(1)

    def var(self, i: int) -> IwElem:
        return self.monomial((0,) * i + (1,) + (0,) * (self.d - i - 1))

    def monomial(self, exps, coeff=1) -> IwElem:
        return IwElem.from_terms(self, {tuple(exps): coeff})

    def gen(self, i: int) -> IwElem:
        """The grouplike <gamma_i> = 1 + U_i."""
        return self.one() + self.var(i)


def parse_header(line: str) -> ActionSpec:
    m = re.fullmatch(r"\s*iwa v1 p=(\d+) N=(\d+) D=(\d+) sig=([+-]+)\s*", line)
    if not m:
        raise ParseError(f"bad header line: {line!r}")
    try:
        return ActionSpec(int(m[1]), int(m[2]), int(m[3]), m[4])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


class IwElem:
    """An element of the truncated Iwasawa algebra.

    Coefficients are stored densely as an integer array indexed by exponent
    vectors, reduced into [0, p^N) and zero outside the total-degree simplex.
    The sparse view is ``terms``.
    """

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: ActionSpec, coeffs: np.ndarray):
        self.spec = spec
        self.coeffs = coeffs
        self.coeffs.flags.writeable = False

    @classmethod
    def from_terms(cls, spec: ActionSpec, terms: dict) -> IwElem:
        arr = np.zeros(spec.shape, dtype=spec.dtype)
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != spec.d or min(exps) < 0:
                raise ValueError(f"bad exponent vector {exps} for d={spec.d}")
            if sum(exps) > spec.D:
                continue
            arr[exps] = (int(arr[exps]) + to_residue(c, spec.p, spec.N)) % spec.modulus
        return cls(spec, arr)

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        """Sorted map exponent vector -> residue in [1, p^N)."""
        nz = np.argwhere(self.coeffs != 0)
        keys = sorted(tuple(int(x) for x in row) for row in nz)
        return {k: int(self.coeffs[k]) for k in keys}

    def coeff(self, exps) -> PAdic:
        exps = tuple(exps)
        v = int(self.coeffs[exps]) if sum(exps) <= self.spec.D else 0
        return PAdic(self.spec.p, self.spec.N, v)

    def degree(self) -> int:
        """Total degree of the representative (-1 for zero)."""
        terms = self.terms
        return max((sum(e) for e in terms), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    # ring structure

    def _check(self, other) -> IwElem:
        if isinstance(other, IwElem):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, PAdic):
            if other.p != self.spec.p:
                raise SpecMismatch(f"{other!r} is not a {self.spec.p}-adic scalar")
            return self.spec.const(other.value)
        return self.spec.const(other)

    def __add__(self, other):
        other = self._check(other)
        return IwElem(self.spec, np.mod(self.coeffs + other.coeffs, self.spec.modulus))

    __radd__ = __add__

    def __neg__(self):
        return IwElem(self.spec, np.mod(-self.coeffs, self.spec.modulus))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return _mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        result, base = self.spec.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> IwElem:
        c = to_residue(c, self.spec.p, self.spec.N)
        return IwElem(self.spec, np.mod(self.coeffs * c, self.spec.modulus))

    def __eq__(self, other):
        if isinstance(other, IwElem):
            return self.spec == other.spec and np.array_equal(self.coeffs, other.coeffs)
        if isinstance(other, (int, PAdic)):
            return self == self._check(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, tuple(self.terms.items())))

    def __repr__(self):
        return f"IwElem({serialize(self)!r}, p={self.spec.p}, N={self.spec.N}, sig={self.spec.signature})"

    # content and units

    def content(self) -> int:
        """Minimal coefficient valuation (N for the zero element)."""
        p, N = self.spec.p, self.spec.N
        return min((valuation(c, p, cap=N) for c in self.terms.values()), default=N)

    def is_unit(self) -> bool:
        return int(self.coeffs[(0,) * self.spec.d]) % self.spec.p != 0


def _mul(a: IwElem, b: IwElem) -> IwElem:
    spec = a.spec
    q, D = spec.modulus, spec.D
    if np.count_nonzero(a.coeffs) > np.count_nonzero(b.coeffs):
        a, b = b, a
    out = np.zeros(spec.shape, dtype=spec.dtype)
    for idx in np.argwhere(a.coeffs != 0):
        idx = tuple(int(x) for x in idx)
        c = a.coeffs[idx]
        dst = tuple(slice(i, D + 1) for i in idx)
        src = tuple(slice(0, D + 1 - i) for i in idx)
        out[dst] = (out[dst] + c * b.coeffs[src]) % q
    out[~spec.mask] = 0
    return IwElem(spec, out)


def invert(a: IwElem) -> IwElem:
    """Inverse of a unit by Newton iteration x <- x(2 - a x)."""
    spec = a.spec
    if not a.is_unit():
        raise NonUnit("element with non-unit constant term is not invertible")
    c0 = padic_invert(a.coeff((0,) * spec.d))
    x = spec.const(c0.value)
    # each step doubles both the p-adic and the U-adic accuracy
    steps = max(spec.N, spec.D + 1).bit_length() + 1
    for _ in range(steps):
        x = x * (2 - a * x)
    return x


# grouplikes and involutions


def binomial_series_coeffs(e: int, p: int, N: int, D: int) -> list[int]:
    """C(e, k) mod p^N for k <= D, with e given modulo p^(N + guard)."""
    q = p**N
    return [math.comb(e, k) % q for k in range(D + 1)]


def grouplike(spec: ActionSpec, exps) -> IwElem:
    """prod_i (1 + U_i)^(e_i) for p-adic integer exponents (ints or p-integral Fractions)."""
    exps = list(exps)
    if len(exps) != spec.d:
        raise SpecMismatch(f"expected {spec.d} exponents, got {len(exps)}")
    result = spec.one()
    prec = spec.N + spec.guard
    for i, e in enumerate(exps):
        rep = to_residue(e, spec.p, prec)
        if rep == 0:
            continue
        series = binomial_series_coeffs(rep, spec.p, spec.N, spec.D)
        factor = IwElem.from_terms(
            spec, {(0,) * i + (k,) + (0,) * (spec.d - i - 1): c for k, c in enumerate(series)}
        )
        result = result * factor
    return result


@lru_cache(maxsize=None)
def _inversion_matrix(p: int, N: int, D: int) -> np.ndarray:
    """Matrix of U -> (1+U)^-1 - 1 on Z/p^N[U]/(U^(D+1)); column k is the image of U^k."""
    # (-U/(1+U))^k = sum_j (-1)^(k+j) C(k+j-1, j) U^(k+j)
    q = p**N
    m = np.zeros((D + 1, D + 1), dtype=object)
    m[0, 0] = 1
    for k in range(1, D + 1):
        for j in range(D + 1 - k):
            m[k + j, k] = (-1) ** (k + j) * math.comb(k + j - 1, j) % q
    return m


def _invert_axes(a: IwElem, axes: list[int]) -> IwElem:
    spec = a.spec
    if not axes:
        return a
    m = _inversion_matrix(spec.p, spec.N, spec.D).astype(spec.dtype)
    arr = a.coeffs
    for ax in axes:
        arr = np.moveaxis(np.tensordot(m, arr, axes=([1], [ax])), 0, ax) % spec.modulus
    arr = np.ascontiguousarray(arr)
    arr[~spec.mask] = 0
    return IwElem(spec, arr)


def iota(a: IwElem) -> IwElem:
    """The involution induced by gamma -> gamma^-1 on all of Gamma."""
    return _invert_axes(a, list(range(a.spec.d)))


def sigma(a: IwElem) -> IwElem:
    """Fixes the + variables and inverts the - variables."""
    return _invert_axes(a, a.spec.variables("-"))


def sigma_iota(a: IwElem) -> IwElem:
    """Composite sigma o iota: inverts the + variables and fixes the - variables."""
    return _invert_axes(a, a.spec.variables("+"))


INVOLUTIONS = {"iota": iota, "sigma": sigma, "sigma_iota": sigma_iota}


def apply_involution(a: IwElem, xi: str) -> IwElem:
    try:
        return INVOLUTIONS[xi](a)
    except KeyError:
        raise ValueError(f"unknown involution {xi!r}; expected one of {sorted(INVOLUTIONS)}") from None


# quotient maps


def specialize(a: IwElem, sign: str) -> IwElem:
    """Set every variable of the opposite signature to 0 (Lambda -> Lambda_sign)."""
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    keep = a.spec.variables(sign)
    if not keep:
        raise ValueError(f"spec {a.spec.signature!r} has no {sign} variable")
    index = tuple(slice(None) if s == sign else 0 for s in a.spec.signature)
    sub = a.spec.sub(keep)
    return IwElem(sub, np.ascontiguousarray(a.coeffs[index]))


def augment(a: IwElem) -> PAdic:
    return a.coeff((0,) * a.spec.d)


@lru_cache(maxsize=None)
def layer_modulus(p: int, k: int) -> tuple[int, ...]:
    """Coefficients of (1+U)^(p^k) - 1, low degree first."""
    m = p**k
    om = [math.comb(m, j) for j in range(m + 1)]
    om[0] = 0
    return tuple(om)


def poly_rem(poly, modulus, q: int) -> list[int]:
    """Remainder of an integer polynomial modulo a monic polynomial, coefficients mod q."""
    n = len(modulus) - 1
    poly = [c % q for c in poly]
    for i in range(len(poly) - 1, n - 1, -1):
        c = poly[i]
        if c:
            base = i - n
            for j in range(n):
                poly[base + j] = (poly[base + j] - c * modulus[j]) % q
            poly[i] = 0
    poly = poly[:n]
    return poly + [0] * (n - len(poly))


@lru_cache(maxsize=None)
def truncation_content(p: int, D: int, k: int, cap: int) -> int:
    """Valuation of the image of the ideal (U^(D+1)) in Z_p[U]/((1+U)^(p^k) - 1), capped.

    Two representatives that agree modulo U^(D+1) have layer images agreeing
    modulo exactly this power of p.
    """
    om = layer_modulus(p, k)
    n = len(om) - 1
    q = p ** (cap + 1)
    best = cap
    for i in range(n):
        rem = poly_rem([0] * (D + 1 + i) + [1], om, q)
        best = min(best, min(valuation(c, p, cap=cap) for c in rem))
        if best == 0:
            break
    return best


@dataclass(frozen=True)
class LayerElem:
    """An element of Lambda_L = Z_p[U]/((1+U)^(p^k) - 1) known modulo p^precision."""

    p: int
    k: int
    precision: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.p**self.k

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    def _compatible(self, other: LayerElem) -> int:
        if (self.p, self.k) != (other.p, other.k):
            raise SpecMismatch("layer elements from different layers")
        return min(self.precision, other.precision)

    def __add__(self, other: LayerElem) -> LayerElem:
        prec = self._compatible(other)
        q = self.p**prec
        return LayerElem(self.p, self.k, prec, tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: LayerElem) -> LayerElem:
        prec = self._compatible(other)
        q = self.p**prec
        n = self.degree
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        rem = poly_rem(prod, layer_modulus(self.p, self.k), q)
        return LayerElem(self.p, self.k, prec, tuple(rem))

    def __eq__(self, other):
        if not isinstance(other, LayerElem):
            return NotImplemented
        prec = self._compatible(other)
        q = self.p**prec
        return all((a - b) % q == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.p, self.k))

    def mult_matrix(self) -> list[list[int]]:
        """Matrix of multiplication by self on the basis 1, U, ..., U^(p^k - 1)."""
        n = self.degree
        om = layer_modulus(self.p, self.k)
        cols = []
        col = list(self.coeffs)
        for _ in range(n):
            cols.append(col)
            col = poly_rem([0] + col, om, self.modulus)
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def layer_reduce(a: IwElem, k: int) -> LayerElem:
    """Image of a univariate element in the layer of degree p^k.

    The representative is divided by (1+U)^(p^k) - 1 as a polynomial; the
    result carries the precision that survives the degree truncation.
    """
    spec = a.spec
    if spec.d != 1:
        raise ValueError("layer_reduce needs a univariate element; specialize first")
    if k < 0:
        raise ValueError("layer index k must be >= 0")
    prec = min(spec.N, truncation_content(spec.p, spec.D, k, spec.N))
    q = spec.p**prec
    rem = poly_rem([int(c) for c in a.coeffs], layer_modulus(spec.p, k), q)
    return LayerElem(spec.p, k, prec, tuple(rem))


# Weierstrass preparation


@dataclass(frozen=True)
class WeierstrassData:
    mu: int
    lam: int
    distinguished: IwElem
    unit: IwElem
    precision: int  # digits of `distinguished` that do not depend on the truncation


def _series_inverse(c: list[int], n: int, q: int) -> list[int]:
    inv0 = pow(c[0], -1, q)
    out = [0] * n
    for i in range(n):
        s = 1 if i == 0 else 0
        for j in range(1, min(i, len(c) - 1) + 1):
            s -= c[j] * out[i - j]
        out[i] = s * inv0 % q
    return out


def _poly_mul_trunc(a: list[int], b: list[int], n: int, q: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return [c % q for c in out]


def weierstrass_prepare(f: IwElem) -> WeierstrassData:
    """Factor a univariate f as p^mu * P * unit with P distinguished of degree lambda.

    The representative of f is read as an exact polynomial, so polynomial
    inputs are factored exactly.  ``precision`` bounds how far P can move when
    f is only known modulo U^(D+1).
    """
    spec = f.spec
    if spec.d != 1:
        raise ValueError("Weierstrass preparation is univariate only")
    if f.is_zero():
        raise PrecisionExhausted("zero in the truncated ring has no preparation")
    p, N, D = spec.p, spec.N, spec.D
    mu = f.content()
    M = N - mu
    q = p**M
    g = [int(c) // p**mu % q for c in f.coeffs]
    lam = next(i for i, c in enumerate(g) if c % p)
    if lam > D - 2:
        raise PrecisionExhausted(f"distinguished degree {lam} exceeds reliable window D-2={D - 2}")

    if lam == 0:
        unit = IwElem.from_terms(spec, {(i,): c for i, c in enumerate(g) if c})
        return WeierstrassData(mu, 0, spec.one(), unit, M)

    # Solve q*g = U^lam + (lower terms) for a unit q by the contraction
    # q <- C^-1 (1 - tau(q B)); working degree W leaves a margin of lam*(M+1)
    # so that the dropped tail cannot reach degrees <= D modulo p^M.
    W = D + lam * (M + 1)
    B = g[:lam]
    C = g[lam:] + [0] * (W + 1 - (len(g) - lam))
    C = C[: W + 1]
    C_inv = _series_inverse(C, W + 1, q)
    qs = C_inv[:]
    for _ in range(M + W // lam + 2):
        qb = _poly_mul_trunc(qs, B, W + lam + 1, q)
        tau = qb[lam:] + [0] * lam
        rhs = [(-t) % q for t in tau[: W + 1]]
        rhs[0] = (rhs[0] + 1) % q
        new = _poly_mul_trunc(C_inv, rhs, W + 1, q)
        if new == qs:
            break
        qs = new
    qs = qs[: D + 1]
    Pc = _poly_mul_trunc(qs, g, D + 1, q)
    if Pc[lam] != 1 % q or any(Pc[lam + 1 :]) or any(c % p for c in Pc[:lam]):
        raise PrecisionExhausted("Weierstrass iteration did not produce a distinguished polynomial")
    uc = _series_inverse(qs, D + 1, q)
    P = IwElem.from_terms(spec, {(i,): c for i, c in enumerate(Pc) if c})
    unit = IwElem.from_terms(spec, {(i,): c for i, c in enumerate(uc) if c})
    prec = min(M, _distinguished_content(Pc, lam, D, p, M))
    return WeierstrassData(mu, lam, P, unit, prec)


def _distinguished_content(Pc: list[int], lam: int, D: int, p: int, cap: int) -> int:
    """Valuation of the image of (U^(D+1)) in Z_p[U]/(P), capped."""
    q = p ** (cap + 1)
    monic = [c % q for c in Pc[: lam + 1]]
    best = cap
    for i in range(lam):
        rem = poly_rem([0] * (D + 1 + i) + [1], monic, q)
        best = min(best, min(valuation(c, p, cap=cap) for c in rem))
    return best


# text serialization


def serialize(a: IwElem) -> str:
    """Terms ``coeff*[e1,...,ed]`` in sorted exponent order; balanced coefficients."""
    q = a.spec.modulus
    parts = []
    for exps, c in a.terms.items():
        c = c - q if c > q // 2 else c
        parts.append(f"{c}*[{','.join(str(e) for e in exps)}]")
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?\d+)\*\[(\d+(?:,\d+)*)\]")


def parse_elem(spec: ActionSpec, text: str) -> IwElem:
    text = text.strip()
    if text == "0":
        return spec.zero()
    terms: dict[tuple[int, ...], int] = {}
    for tok in text.split():
        m = _TERM.fullmatch(tok)
        if not m:
            raise ParseError(f"bad term {tok!r}")
        exps = tuple(int(x) for x in m[2].split(","))
        if len(exps) != spec.d:
            raise ParseError(f"term {tok!r} has {len(exps)} exponents, spec has d={spec.d}")
        if exps in terms:
            raise ParseError(f"duplicate exponent vector in {tok!r}")
        terms[exps] = int(m[1])
    return IwElem.from_terms(spec, terms)


def retruncate(a: IwElem, N: int | None = None, D: int | None = None) -> IwElem:
    """Image of a in the coarser ring with precision N <= a.spec.N and cap D <= a.spec.D."""
    spec = a.spec
    N = spec.N if N is None else N
    D = spec.D if D is None else D
    if not (1 <= N <= spec.N and 2 <= D <= spec.D):
        raise ValueError(f"cannot refine (N, D) = ({spec.N}, {spec.D}) to ({N}, {D})")
    return IwElem.from_terms(ActionSpec(spec.p, N, D, spec.signature), a.terms)


def all_exponents(spec: ActionSpec):
    """Exponent vectors of total degree <= D in lexicographic order."""
    for exps in itertools.product(range(spec.D + 1), repeat=spec.d):
        if sum(exps) <= spec.D:
            yield exps
