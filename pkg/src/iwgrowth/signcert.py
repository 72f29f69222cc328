"""Signs of the involutions iota, sigma on a principal ideal (L), and a
generator that is an exact eigenvector for both.

For a xi-stable ideal, L^xi = u L with u(0) = +-1.  Because xi respects the
m-adic filtration, comparing initial forms in gr_m(Lambda) = F_p[pbar, Ubar_i]
reads off u(0) without dividing power series.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateSymmetrization, NotEigenInitialForm, PrecisionExhausted, ZeroElement
from .iwalg import IwElem, apply_involution, weierstrass_prepare
from .padic import valuation


@dataclass(frozen=True)
class InitialForm:
    """Lowest-weight homogeneous part of an element, weight(p) = weight(U_i) = 1.

    ``terms`` maps (power of pbar, exponent vector) to a nonzero residue mod p.
    """

    weight: int
    terms: dict

    def __str__(self):
        parts = []
        for (pe, exps), c in sorted(self.terms.items()):
            mono = ["p" + (f"^{pe}" if pe > 1 else "")] if pe else []
            mono += [f"U{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            parts.append(f"{c}*" + "*".join(mono) if mono else str(c))
        return " + ".join(parts)


def initial_form(a: IwElem) -> InitialForm:
    if a.is_zero():
        raise ZeroElement("the zero element has no initial form")
    p, N, D = a.spec.p, a.spec.N, a.spec.D
    weighted = []
    for exps, c in a.terms.items():
        v = valuation(c, p)
        weighted.append((v + sum(exps), v, exps, c))
    w = min(t[0] for t in weighted)
    # unknown parts of a have weight >= N (p-adic) or >= D+1 (degree)
    if w >= min(N, D + 1):
        raise PrecisionExhausted(f"initial form has weight {w}, not below min(N, D+1)")
    terms = {(v, exps): (c // p**v) % p for wt, v, exps, c in weighted if wt == w}
    return InitialForm(w, terms)


def _negated_variables(spec, xi: str) -> set[int]:
    # linearization on gr: iota sends every Ubar to -Ubar, sigma only the '-' ones
    if xi == "iota":
        return set(range(spec.d))
    if xi == "sigma":
        return set(spec.variables("-"))
    if xi == "sigma_iota":
        return set(spec.variables("+"))
    raise ValueError(f"unknown involution {xi!r}")


def epsilon_of(L: IwElem, xi: str) -> int:
    """The sign u(0) in L^xi = u L, read from the initial form of L."""
    form = initial_form(L)
    neg = _negated_variables(L.spec, xi)
    signs = {(-1) ** (sum(exps[i] for i in neg) % 2) for (_, exps) in form.terms}
    if len(signs) != 1:
        raise NotEigenInitialForm(f"{xi} does not act on init(L) = {form} by a sign")
    return signs.pop()


@dataclass(frozen=True)
class SignRecord:
    epsilon_iota: int
    epsilon_sigma: int
    epsilon_sigma_iota: int
    symmetrized: IwElem
    mu: int


def _symmetrize_step(L: IwElem, xi: str, eps: int) -> IwElem:
    image = apply_involution(L, xi)
    if image == L.scale(eps):
        return L
    out = L + image.scale(eps)
    if out.is_zero():
        raise DegenerateSymmetrization(f"{xi}-symmetrization vanished in the truncated ring")
    return out


def symmetrize(L: IwElem) -> SignRecord:
    """A generator L' of (L) with L'^iota = eps(iota) L' and L'^sigma = eps(sigma) L'."""
    if L.is_zero():
        raise ZeroElement("cannot symmetrize the zero element")
    spec = L.spec
    p, N = spec.p, spec.N
    mu = L.content()
    # work with L / p^mu at precision N - mu, then multiply back by p^mu
    reduced_spec = spec.with_precision(N - mu)
    M = IwElem.from_terms(reduced_spec, {e: c // p**mu for e, c in L.terms.items()})
    eps_iota = epsilon_of(M, "iota")
    eps_sigma = epsilon_of(M, "sigma")
    M = _symmetrize_step(M, "iota", eps_iota)
    M = _symmetrize_step(M, "sigma", eps_sigma)
    sym = IwElem.from_terms(spec, {e: c * p**mu for e, c in M.terms.items()})
    return SignRecord(eps_iota, eps_sigma, eps_iota * eps_sigma, sym, mu)


def check_stability(L: IwElem, xi: str) -> bool:
    """Univariate test that (L) is xi-stable: same mu and the same distinguished polynomial."""
    if L.spec.d != 1:
        raise ValueError("stability can only be checked for univariate elements")
    a = weierstrass_prepare(L)
    b = weierstrass_prepare(apply_involution(L, xi))
    if a.mu != b.mu or a.lam != b.lam:
        return False
    prec = min(a.precision, b.precision)
    if prec < 1:
        raise PrecisionExhausted("distinguished polynomials not determined modulo p")
    q = L.spec.p**prec
    da, db = a.distinguished.terms, b.distinguished.terms
    keys = set(da) | set(db)
    return all((da.get(k, 0) - db.get(k, 0)) % q == 0 for k in keys)
