"""Selmer-growth certificates for an organizing matrix over Lambda with d = 2.

The decision procedure:

* det(H) = 0 (to precision): the cokernel is not torsion, so both
  specializations are non-torsion and growth holds along both towers.
* otherwise symmetrize L = det(H); eps(iota) = (-1)^r always.  If
  eps(sigma) = -1, L dies in Lambda_+ (sigma is trivial there).  If
  eps(sigma) = +1 and r is odd, eps(sigma iota) = -1 and L dies in Lambda_-.

A dead image of L makes the specialized cokernel non-torsion, which bounds
the corank at each layer of degree p^k from below by p^k.  The layer table
is computed independently by brute-force linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EpsilonIotaMismatch, IwasawaError, NotEigenInitialForm, PrecisionExhausted
from .iwalg import specialize
from .signcert import epsilon_of, symmetrize
from .skewherm import LayerRankReport, OrganizingMatrix, coker_rank_at_layer, determinant, residual_corank

SIGNS = ("+", "-")


@dataclass
class GrowthCertificate:
    r: int
    p: int
    N: int
    D: int
    torsion_to_precision: bool
    base_corank: int
    base_parity: str
    epsilon_iota: int | None
    epsilon_sigma: int | None
    forced_signs: frozenset
    specialization_vanishes: dict
    layers: list[LayerRankReport] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)

    @property
    def forced_label(self) -> str:
        if self.forced_signs == frozenset(SIGNS):
            return "both"
        if not self.forced_signs:
            return "none"
        return next(iter(self.forced_signs))

    def violations(self) -> list[str]:
        """Invariants of the certificate that fail; empty for a sound certificate."""
        bad = []
        if not self.torsion_to_precision and self.forced_signs != frozenset(SIGNS):
            bad.append("non-torsion certificate must force both signs")
        if self.epsilon_sigma == -1 and "+" not in self.forced_signs:
            bad.append("eps(sigma) = -1 but + not forced")
        if self.epsilon_sigma == 1 and self.base_parity == "odd" and "-" not in self.forced_signs:
            bad.append("eps(sigma) = +1 with odd parity but - not forced")
        for s in sorted(self.forced_signs):
            if self.torsion_to_precision and not self.specialization_vanishes.get(s):
                bad.append(f"forced sign {s} but the symmetrized generator survives there")
            bad += [f"forced sign {s} fails at layer k={rep.k}" for rep in self.layers if rep.sign == s and not rep.satisfied]
        return bad

    def render(self) -> str:
        def eps(e):
            return "n/a" if e is None else f"{e:+d}"

        lines = [f"r: {self.r}"]
        if self.torsion_to_precision:
            lines.append(f"torsion: yes (to precision p^{self.N}, deg {self.D})")
        else:
            lines.append(f"torsion: no (det vanishes to precision p^{self.N}, deg {self.D})")
        lines += [
            f"base_corank: {self.base_corank}",
            f"parity: {self.base_parity}",
            f"epsilon_iota: {eps(self.epsilon_iota)}",
            f"epsilon_sigma: {eps(self.epsilon_sigma)}",
            f"forced: {self.forced_label}",
        ]
        for s in SIGNS:
            if s in self.specialization_vanishes:
                flag = "yes" if self.specialization_vanishes[s] else "no"
                lines.append(f"vanishes sign={s}: {flag}")
        lines += [rep.line() for rep in self.layers]
        lines += [f"caveat: {c}" for c in self.caveats]
        return "\n".join(lines) + "\n"


def parity(H: OrganizingMatrix) -> str:
    return "odd" if residual_corank(H) % 2 else "even"


def verify_layers(H: OrganizingMatrix, sign: str, k_max: int) -> list[LayerRankReport]:
    return [coker_rank_at_layer(H, sign, k) for k in range(k_max + 1)]


def certify(H: OrganizingMatrix, k_max: int = 1) -> GrowthCertificate:
    spec = H.spec
    if sorted(spec.signature) != ["+", "-"]:
        raise ValueError(f"certify needs one + and one - variable, got signature {spec.signature!r}")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    caveats: list[str] = []
    L = determinant(H)
    base = residual_corank(H)
    par = "odd" if base % 2 else "even"
    cert = GrowthCertificate(
        r=H.r,
        p=spec.p,
        N=spec.N,
        D=spec.D,
        torsion_to_precision=not L.is_zero(),
        base_corank=base,
        base_parity=par,
        epsilon_iota=None,
        epsilon_sigma=None,
        forced_signs=frozenset(),
        specialization_vanishes={},
        caveats=caveats,
    )

    if L.is_zero():
        caveats.append(f"det(H) = 0 modulo (p^{spec.N}, deg > {spec.D}); cokernel treated as non-torsion")
        cert.forced_signs = frozenset(SIGNS)
    else:
        eps_iota = epsilon_of(L, "iota")
        if eps_iota != (-1) ** H.r:
            raise EpsilonIotaMismatch(f"eps(iota) = {eps_iota} but (-1)^r = {(-1) ** H.r}")
        cert.epsilon_iota = eps_iota
        try:
            record = symmetrize(L)
        except NotEigenInitialForm:
            caveats.append("sigma does not act on init(det H) by a sign; (det H) is not sigma-stable")
            record = None
        if record is not None:
            cert.epsilon_sigma = record.epsilon_sigma
            vanish = {s: specialize(record.symmetrized, s).is_zero() for s in SIGNS}
            cert.specialization_vanishes = vanish
            forced = set()
            if record.epsilon_sigma == -1:
                forced.add("+")
                if par == "even":
                    caveats.append("residual corank is even; + is forced by eps(sigma) = -1 alone")
            elif par == "odd":
                forced.add("-")
            else:
                caveats.append("eps(sigma) = +1 with even residual corank: no sign is forced")
            cert.forced_signs = frozenset(forced)
            caveats.append("sigma-stability of (det H) is assumed, not verified, in several variables")
        caveats.append(f"torsion judged from det(H) != 0 modulo (p^{spec.N}, deg > {spec.D})")

    for s in SIGNS:
        for k in range(k_max + 1):
            try:
                rep = coker_rank_at_layer(H, s, k)
            except PrecisionExhausted:
                if s in cert.forced_signs:
                    raise
                caveats.append(f"layer sign={s} k={k}: rank not certifiable at this precision")
                continue
            if not rep.precision_ok:
                caveats.append(f"layer sign={s} k={k}: computed modulo p^{rep.precision} only")
            cert.layers.append(rep)

    bad = cert.violations()
    if bad:
        raise IwasawaError("inconsistent certificate: " + "; ".join(bad))
    return cert
