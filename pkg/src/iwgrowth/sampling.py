"""Seeded random elements and organizing matrices for property suites."""

from __future__ import annotations

import numpy as np

from .iwalg import ActionSpec, IwElem, iota, sigma
from .skewherm import OrganizingMatrix, check_skew_hermitian


def random_elem(spec: ActionSpec, rng: np.random.Generator, *, in_max: bool = False, density: float = 1.0) -> IwElem:
    """Uniform coefficients on a random subset of monomials; constant in pZ_p if ``in_max``."""
    q = spec.modulus
    arr = rng.integers(0, q, size=spec.shape, dtype=np.int64)
    if density < 1.0:
        arr[rng.random(spec.shape) >= density] = 0
    arr = arr.astype(spec.dtype)
    arr[~spec.mask] = 0
    if in_max:
        arr[(0,) * spec.d] = (arr[(0,) * spec.d] * spec.p) % q
    return IwElem(spec, arr)


def random_unit(spec: ActionSpec, rng: np.random.Generator, density: float = 1.0) -> IwElem:
    x = random_elem(spec, rng, density=density)
    c0 = int(rng.integers(1, spec.p))
    return x + (c0 - int(x.coeffs[(0,) * spec.d]))


def _sigma_symmetric(a: IwElem, parity: str | None) -> IwElem:
    if parity is None:
        return a
    if parity == "even":
        return a + sigma(a)
    if parity == "odd":
        return a - sigma(a)
    raise ValueError(f"sigma parity must be 'even', 'odd' or None, got {parity!r}")


def random_organizing_matrix(
    spec: ActionSpec,
    r: int,
    rng: np.random.Generator,
    *,
    sigma_parity: str | None = None,
    density: float = 1.0,
) -> OrganizingMatrix:
    """H = A - (A^iota)^T + diag(x_i - x_i^iota) with A strictly upper triangular in m.

    With ``sigma_parity`` 'even' (resp. 'odd') every entry satisfies
    h^sigma = h (resp. -h), so det(H)^sigma = det(H) (resp. (-1)^r det(H)).
    """
    rows = [[spec.zero() for _ in range(r)] for _ in range(r)]
    for i in range(r):
        x = _sigma_symmetric(random_elem(spec, rng, in_max=True, density=density), sigma_parity)
        rows[i][i] = x - iota(x)
        for j in range(i + 1, r):
            a = _sigma_symmetric(random_elem(spec, rng, in_max=True, density=density), sigma_parity)
            rows[i][j] = a
            rows[j][i] = -iota(a)
    return check_skew_hermitian(rows)
