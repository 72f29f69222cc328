"""Organizing matrices: skew-Hermitian r x r matrices H over Lambda.

H presents the basic complex [Lambda^r --H--> Lambda^r]; its cokernel is the
dual Selmer module and det(H) generates the characteristic ideal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import (
    MultiEigenvariable,
    NotInMaximalIdeal,
    NotSkewHermitian,
    ParseError,
    PrecisionExhausted,
)
from .iwalg import (
    ActionSpec,
    IwElem,
    augment,
    iota,
    layer_modulus,
    layer_reduce,
    parse_elem,
    parse_header,
    serialize,
    specialize,
    truncation_content,
)
from .padic import valuation

RANK_GUARD = 2


@dataclass(frozen=True)
class OrganizingMatrix:
    spec: ActionSpec
    entries: tuple[tuple[IwElem, ...], ...]

    @property
    def r(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> IwElem:
        i, j = ij
        return self.entries[i][j]

    def map(self, fn) -> list[list[IwElem]]:
        return [[fn(x) for x in row] for row in self.entries]

    def residual(self) -> list[list[int]]:
        """H(0): the augmentation of every entry, a skew-symmetric matrix over Z/p^N."""
        return self.map(lambda x: augment(x).value)


def check_skew_hermitian(H) -> OrganizingMatrix:
    rows = [list(row) for row in H]
    r = len(rows)
    if r == 0 or any(len(row) != r for row in rows):
        raise ValueError("organizing matrix must be square and nonempty")
    spec = rows[0][0].spec
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x.spec != spec:
                raise ValueError(f"entry ({i + 1},{j + 1}) lives over a different ActionSpec")
    for i in range(r):
        for j in range(i, r):
            if iota(rows[j][i]) != -rows[i][j]:
                raise NotSkewHermitian(i, j)
    for i in range(r):
        for j in range(r):
            if augment(rows[i][j]).valuation < 1:
                raise NotInMaximalIdeal(i, j)
    return OrganizingMatrix(spec, tuple(tuple(row) for row in rows))


def determinant(H: OrganizingMatrix | list) -> IwElem:
    """Exact determinant in the truncated ring (Leibniz expansion; r is small)."""
    rows = H.entries if isinstance(H, OrganizingMatrix) else H
    r = len(rows)
    spec = rows[0][0].spec
    if r == 1:
        return rows[0][0]
    if r <= 3:
        total = spec.zero()
        for perm in permutations(range(r)):
            term = rows[0][perm[0]]
            for i in range(1, r):
                term = term * rows[i][perm[i]]
            total = total + term if _parity(perm) == 0 else total - term
        return total
    # cofactor expansion along the first row
    total = spec.zero()
    for j in range(r):
        if rows[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * determinant([list(m) for m in minor])
        total = total + term if j % 2 == 0 else total - term
    return total


def _parity(perm) -> int:
    seen, parity = set(), 0
    for start in range(len(perm)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = perm[i]
            length += 1
        parity ^= (length - 1) & 1
    return parity


# rank over Q_p from a matrix known modulo p^prec


def certified_rank(mat, p: int, prec: int, guard: int = RANK_GUARD) -> int:
    """Rank over Q_p of an integer matrix known modulo p^prec.

    Full pivoting on minimal valuation (a Smith form over Z/p^prec) keeps the
    absolute precision intact.  A pivot counts only if its valuation is at
    most prec - guard; entries that vanish modulo p^prec are taken as zero.
    """
    a = np.array(mat, dtype=object)
    if a.size == 0:
        return 0
    if prec < guard:
        # even a matrix vanishing mod p^prec may have full rank over Q_p
        raise PrecisionExhausted(f"layer precision p^{prec} is below the rank guard {guard}")
    q = p**prec
    dtype = np.int64 if q * q < 2**62 // max(a.shape) else object
    a = np.mod(a, q).astype(dtype)
    rank = 0
    nrows, ncols = a.shape
    while rank < min(nrows, ncols):
        sub = a[rank:, rank:]
        if not sub.any():
            break
        vals = np.zeros(sub.shape, dtype=np.int64)
        for t in range(1, prec + 1):
            vals += (sub % p**t == 0)
        i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
        v = int(vals[i, j])
        if v > prec - guard:
            raise PrecisionExhausted(
                f"smallest remaining pivot has valuation {v} > {prec - guard} at precision p^{prec}"
            )
        i, j = int(i) + rank, int(j) + rank
        a[[rank, i]] = a[[i, rank]]
        a[:, [rank, j]] = a[:, [j, rank]]
        pv = int(a[rank, rank])
        unit_inv = pow(pv // p**v, -1, q)
        a[rank] = (a[rank] * unit_inv) % q
        col = a[rank + 1 :, rank]
        # every entry below has valuation >= v, so the quotient by p^v is exact
        factors = (col // p**v) % q
        a[rank + 1 :] = (a[rank + 1 :] - np.outer(factors, a[rank]) % q) % q
        rank += 1
    return rank


def residual_corank(H: OrganizingMatrix) -> int:
    """Q_p-corank of the cokernel of H(0); congruent to r modulo 2."""
    rank = certified_rank(H.residual(), H.spec.p, H.spec.N)
    return H.r - rank


# layers


@dataclass(frozen=True)
class LayerRankReport:
    sign: str
    k: int
    layer_degree: int
    corank: int
    bound: int
    satisfied: bool
    precision_ok: bool
    precision: int

    def line(self) -> str:
        status = "ok" if self.satisfied else "below"
        return (
            f"layer sign={self.sign} k={self.k} corank={self.corank} "
            f"bound={self.bound} {status}"
        )


def _eigen_variable(spec: ActionSpec, sign: str) -> int:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    vs = spec.variables(sign)
    if len(vs) >= 2:
        raise MultiEigenvariable(f"sign {sign} has {len(vs)} variables; layers need exactly one")
    if not vs:
        raise ValueError(f"spec {spec.signature!r} has no {sign} variable")
    return vs[0]


def layer_block_matrix(H: OrganizingMatrix, sign: str, k: int) -> tuple[list[list[int]], int]:
    """Specialize, reduce to the layer, and expand to an (r p^k)-square matrix over Z_p."""
    _eigen_variable(H.spec, sign)
    n = H.spec.p**k
    blocks = H.map(lambda x: layer_reduce(specialize(x, sign), k))
    prec = min(b.precision for row in blocks for b in row)
    return _assemble(blocks, n, H.r), prec


def layer_block_matrix_reduce_first(H: OrganizingMatrix, sign: str, k: int) -> tuple[list[list[int]], int]:
    """The other evaluation order: divide by (1+U)^(p^k) - 1 in the chosen variable
    with the remaining variables still present, expand into blocks with entries
    in those variables, and only then set them to 0."""
    spec = H.spec
    axis = _eigen_variable(spec, sign)
    p, N, D = spec.p, spec.N, spec.D
    n = p**k
    prec = min(N, truncation_content(p, D, k, N))
    q = p**prec
    om = layer_modulus(p, k)

    def reduce_entry(x: IwElem) -> np.ndarray:
        # coefficient polynomials along `axis`, each a full array in the others
        arr = np.moveaxis(np.array(x.coeffs, dtype=object), axis, 0)
        polys = [arr[i] for i in range(D + 1)]
        polys += [np.zeros_like(polys[0]) for _ in range(max(0, n - len(polys)))]
        for i in range(len(polys) - 1, n - 1, -1):
            c = polys[i]
            if c.any():
                for j in range(n):
                    polys[i - n + j] = (polys[i - n + j] - c * om[j]) % q
                polys[i] = np.zeros_like(c)
        rem = [polys[i] % q for i in range(n)]
        cols = [rem]
        for _ in range(n - 1):
            prev = cols[-1]
            shifted = [np.zeros_like(prev[0])] + prev
            top = shifted[n]
            nxt = [(shifted[j] - top * om[j]) % q for j in range(n)]
            cols.append(nxt)
        block = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                block[i, j] = cols[j][i]
        return block

    r = H.r
    big = [[None] * (r * n) for _ in range(r * n)]
    for bi in range(r):
        for bj in range(r):
            block = reduce_entry(H[bi, bj])
            for i in range(n):
                for j in range(n):
                    # the remaining variables go to 0 only now
                    poly = block[i, j]
                    big[bi * n + i][bj * n + j] = int(poly[(0,) * poly.ndim]) if poly.ndim else int(poly)
    return big, prec


def _assemble(blocks, n: int, r: int) -> list[list[int]]:
    big = [[0] * (r * n) for _ in range(r * n)]
    for bi in range(r):
        for bj in range(r):
            m = blocks[bi][bj].mult_matrix()
            for i in range(n):
                for j in range(n):
                    big[bi * n + i][bj * n + j] = m[i][j]
    return big


def coker_rank_at_layer(H: OrganizingMatrix, sign: str, k: int, order: str = "specialize_first") -> LayerRankReport:
    """Q_p-corank of H acting on Lambda_L^r for the layer of degree p^k inside K_sign."""
    if k < 0:
        raise ValueError("layer index k must be >= 0")
    if order == "specialize_first":
        big, prec = layer_block_matrix(H, sign, k)
    elif order == "reduce_first":
        big, prec = layer_block_matrix_reduce_first(H, sign, k)
    else:
        raise ValueError(f"unknown evaluation order {order!r}")
    n = H.spec.p**k
    corank = H.r * n - certified_rank(big, H.spec.p, prec)
    return LayerRankReport(
        sign=sign,
        k=k,
        layer_degree=n,
        corank=corank,
        bound=n,
        satisfied=corank >= n,
        precision_ok=prec == H.spec.N,
        precision=prec,
    )


# matrix file format


def serialize_matrix(H: OrganizingMatrix) -> str:
    lines = [H.spec.header(), f"matrix r={H.r}"]
    for i in range(H.r):
        for j in range(H.r):
            lines.append(f"entry {i + 1} {j + 1} : {serialize(H[i, j])}")
    return "\n".join(lines) + "\n"


def parse_matrix_entries(text: str) -> tuple[ActionSpec, list[list[IwElem]]]:
    """Parse a matrix file without validating the skew-Hermitian conditions."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2:
        raise ParseError("matrix file needs a header and a 'matrix r=' line")
    spec = parse_header(lines[0])
    m = re.fullmatch(r"\s*matrix r=(\d+)\s*", lines[1])
    if not m or int(m[1]) < 1:
        raise ParseError(f"bad matrix line: {lines[1]!r}")
    r = int(m[1])
    body = lines[2:]
    if len(body) != r * r:
        raise ParseError(f"expected {r * r} entry lines, found {len(body)}")
    rows: list[list[IwElem | None]] = [[None] * r for _ in range(r)]
    for ln in body:
        em = re.fullmatch(r"\s*entry (\d+) (\d+) : (.*)", ln)
        if not em:
            raise ParseError(f"bad entry line: {ln!r}")
        i, j = int(em[1]) - 1, int(em[2]) - 1
        if not (0 <= i < r and 0 <= j < r):
            raise ParseError(f"entry index out of range: {ln!r}")
        if rows[i][j] is not None:
            raise ParseError(f"duplicate entry ({i + 1},{j + 1})")
        rows[i][j] = parse_elem(spec, em[3])
    return spec, rows  # type: ignore[return-value]


def parse_matrix(text: str) -> OrganizingMatrix:
    _, rows = parse_matrix_entries(text)
    return check_skew_hermitian(rows)
