"""Worked-example suites: key-value report lines plus tagged pass/fail checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    TAU_DISPLAYED,
    WEIGHT4_LEVEL5,
    Check,
    admissible_primes_37a,
    count_points_37a_bruteforce,
    gl2_bound_check,
    hecke_unit_root,
    is_fundamental_discriminant,
    is_prime_power,
    kronecker,
    odd_corank_fields_condition,
    ordinary_primes_delta,
    primes_upto,
    tau_series,
    weight4_level5_checks,
)
from .errors import NotOrdinary


@dataclass
class Report:
    suite: str
    lines: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    def check(self, name: str, tag: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, tag, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        out = [f"suite: {self.suite}"] + self.lines
        for c in self.checks:
            tail = f" ({c.detail})" if c.detail else ""
            out.append(f"check [{c.tag}] {c.name}: {'pass' if c.passed else 'FAIL'}{tail}")
        failed = sum(not c.passed for c in self.checks)
        out.append(f"summary: {len(self.checks) - failed} passed, {failed} failed")
        return "\n".join(out) + "\n"


def delta_report(bound: int = 100) -> Report:
    rep = Report("delta")
    bound = max(bound, 11)
    tau = tau_series(bound)
    rep.lines.append("tau: " + " ".join(str(tau[n]) for n in range(1, 13)))
    for n, t in enumerate(TAU_DISPLAYED, start=1):
        rep.check(f"tau({n}) = {t}", "discriminant q-expansion", tau[n] == t)
    for p in primes_upto(math.isqrt(bound)):
        rep.check(f"tau({p}^2) = tau({p})^2 - {p}^11", "Hecke recursion", tau[p * p] == tau[p] ** 2 - p**11)
    ordinary = ordinary_primes_delta(bound, tau)
    rep.lines.append(f"ordinary_primes(<= {bound}): " + " ".join(map(str, ordinary)))
    rep.check("first ordinary prime is 11", "first ordinary prime", bool(ordinary) and ordinary[0] == 11)
    alpha = hecke_unit_root(tau[11], 11, 12, 6)
    rep.lines.append(f"alpha_11 mod 11^6: {alpha.value}")
    rep.check("alpha_11 = 1 mod 11", "unit root", alpha.value % 11 == 1)
    resid = (alpha.value**2 - tau[11] * alpha.value + 11**11) % 11**6
    rep.check("alpha^2 - tau(11) alpha + 11^11 = 0 mod 11^6", "unit root", resid == 0)
    # i/2 in {0, 5} mod 10 with k/2 = 6: only the twist with i/2 + k/2 != 1 survives
    rep.check("i/2 = 0: 0 + 6 != 1 mod 10", "self-dual twist", (0 + 6) % 10 != 1)
    rep.check("i/2 = 5: 5 + 6 = 1 mod 10 (excluded)", "self-dual twist", (5 + 6) % 10 == 1)
    return rep


def e37a_report(bound: int = 100) -> Report:
    rep = Report("e37a")
    if not 2 <= bound <= 10**4:
        raise ValueError("e37a bound must lie in [2, 10^4]")
    recs = admissible_primes_37a(bound, records=True)
    for r in recs:
        rep.lines.append(
            f"prime p={r.p} a_p={r.a_p} split={'yes' if r.split_in_K else 'no'} "
            f"zero_Q={'yes' if r.zero_over_Q else 'no'} zero_K={'yes' if r.zero_over_K else 'no'} "
            f"admissible={'yes' if r.admissible else 'no'}"
        )
    adm = [r.p for r in recs if r.admissible]
    rep.lines.append("admissible: " + " ".join(map(str, adm)))
    a = {r.p: r.a_p for r in recs}
    if 2 in a:
        rep.check(f"a_2 = {a[2]} = 0 mod 2", "supersingular", a[2] % 2 == 0)
    if 3 in a:
        rep.check(f"a_3 = {a[3]} = 0 mod 3", "supersingular", a[3] % 3 == 0)
    weil = [p for p, ap in a.items() if ap * ap > 4 * p]
    rep.check(f"|a_p| <= 2 sqrt(p) for all p <= {bound}", "Weil bound", not weil, f"violations: {weil}" if weil else "")
    excluded = {p for p, ap in a.items() if p <= 3 or p == 37 or ap in (0, 1, -1)}
    rep.check(
        "admissible = primes minus {p <= 3} u {37} u {a_p in {0, +-1}}",
        "admissibility",
        set(adm) == set(a) - excluded,
    )
    recount = bound <= 1000
    if recount:
        bad = [p for p in a if count_points_37a_bruteforce(p).a_p != a[p]]
        rep.check("second enumeration order agrees", "double enumeration", not bad, f"mismatch at {bad}" if bad else "")
    rep.check("chi_K(37) = +1 for K = Q(sqrt(-3))", "odd corank over K", kronecker(-3, 37) == 1)
    return rep


def weight4_report(bound: int = 0) -> Report:
    rep = Report("weight4")
    rep.lines.append("a_n: " + " ".join(str(x) for x in WEIGHT4_LEVEL5))
    rep.checks.extend(weight4_level5_checks())
    alpha = hecke_unit_root(WEIGHT4_LEVEL5[2], 3, 4, 8)
    rep.lines.append(f"alpha_3 mod 3^8: {alpha.value}")
    rep.check("alpha_3 = 2 mod 3", "unit root", alpha.value % 3 == 2)
    resid = (alpha.value**2 - 2 * alpha.value + 27) % 3**8
    rep.check("alpha^2 - 2 alpha + 27 = 0 mod 3^8", "unit root", resid == 0)
    try:
        hecke_unit_root(WEIGHT4_LEVEL5[4], 5, 4, 4)
        raised = False
    except NotOrdinary:
        raised = True
    rep.check("a_5 = -5 has no unit root at 5", "non-ordinary", raised)
    return rep


def gl2_report(bound: int = 50) -> Report:
    rep = Report("gl2")
    c = gl2_bound_check(11, 1)
    rep.lines.append(
        f"q=11 index=1 gl2_order={c.gl2_order} borel_order={c.borel_order} threshold={c.threshold} "
        f"passes={'yes' if c.passes else 'no'}"
    )
    rep.check("#GL_2(F_11) = 13200", "group order", c.gl2_order == 13200)
    rep.check("#B(F_11) = 1100", "group order", c.borel_order == 1100)
    rep.check("index 1 < 6 passes and 13200 > 2200", "index bound", c.passes and c.gl2_order > 2 * c.borel_order)
    rep.check("index 6 does not pass at q = 11", "index bound", not gl2_bound_check(11, 6).passes)
    top = max(bound, 3)
    tried, bad = 0, []
    for q in range(3, top + 1):
        if not is_prime_power(q):
            continue
        for index in range(1, (q + 1) // 2 + 2):
            try:
                chk = gl2_bound_check(q, index)
            except ArithmeticError:
                bad.append((q, index))
                continue
            if chk.passes:
                tried += 1
                if not Fraction(chk.gl2_order, index) > 2 * chk.borel_order:
                    bad.append((q, index))
    rep.lines.append(f"exhaustive: q <= {top}, passing indices checked={tried}")
    rep.check(
        f"#GL_2/index > 2 #B for every passing index, q <= {top}",
        "index bound",
        tried > 0 and not bad,
        f"failures: {bad}" if bad else "",
    )
    return rep


def signs_report(bound: int = 100) -> Report:
    rep = Report("signs")
    discs = [D for D in range(-3, -max(bound, 4) - 1, -1) if is_fundamental_discriminant(D)]
    rep.lines.append(f"imaginary fundamental discriminants >= -{max(bound, 4)}: {len(discs)}")
    rep.check("chi_D(-1) = -1 for every imaginary D", "imaginary field", all(kronecker(D, -1) == -1 for D in discs))
    # root number of f over K is chi_K(-N); with chi_K(-1) = -1 it is -1 exactly when chi_K(N) = 1
    for label, N_f in (("discriminant form", 1), ("37a", 37), ("weight 4 level 5", 5)):
        odd = [D for D in discs if odd_corank_fields_condition(N_f, D)]
        agree = all((kronecker(D, -N_f) == -1) == (D in odd) for D in discs if math.gcd(D, N_f) == 1)
        rep.lines.append(f"odd_corank N={N_f}: " + " ".join(map(str, odd)))
        rep.check(f"sign chi_K(-{N_f}) = -1 iff chi_K({N_f}) = 1", label, agree)
    rep.check("N = 1: every K has odd corank", "discriminant form", all(odd_corank_fields_condition(1, D) for D in discs))
    rep.check("N = 37, D = -3: odd corank", "37a", odd_corank_fields_condition(37, -3))
    rep.check("N = 5, D = -3: chi(5) = -1, even corank", "weight 4 level 5", not odd_corank_fields_condition(5, -3))
    rep.check("N = 5, D = -4: chi(5) = +1, odd corank", "weight 4 level 5", odd_corank_fields_condition(5, -4))
    mult = all(
        kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n)
        for D in discs[:10]
        for m in range(1, 30)
        for n in range(1, 30)
    )
    rep.check("(D|mn) = (D|m)(D|n)", "complete multiplicativity", mult)
    return rep


SUITE_REPORTS = {
    "delta": (delta_report, 100),
    "e37a": (e37a_report, 100),
    "weight4": (weight4_report, 0),
    "gl2": (gl2_report, 50),
    "signs": (signs_report, 100),
}


def run_examples(suite: str, bound: int | None = None) -> Report:
    fn, default = SUITE_REPORTS[suite]
    return fn(default if bound is None else bound)
