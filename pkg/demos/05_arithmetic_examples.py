# # Arithmetic behind the examples
#
# Ramanujan tau, unit roots of Hecke polynomials, point counts on y^2 + y = x^3 - x
# (the curve 37a), quadratic characters and a group-order bound.

import time

from iwgrowth.arith import (
    admissible_primes_37a,
    gl2_bound_check,
    hecke_unit_root,
    kronecker,
    odd_corank_fields_condition,
    ordinary_primes_delta,
    tau_series,
)
from iwgrowth.reports import run_examples

# ## tau(n) up to 10^4

t0 = time.perf_counter()
tau = tau_series(10**4)
print(f"tau(1..11) = {[tau[n] for n in range(1, 12)]}  ({time.perf_counter() - t0:.2f}s to 10^4)")
print("ordinary primes below 60:", ordinary_primes_delta(60, tau))

# ## The unit root at 11
#
# x^2 - tau(11) x + 11^11 has exactly one root that is a 11-adic unit.

alpha = hecke_unit_root(tau[11], 11, 12, 6)
print("alpha_11 mod 11^6 =", alpha.value, " alpha mod 11 =", alpha.value % 11)

# ## The curve 37a

recs = admissible_primes_37a(50, records=True)
print("a_p for p < 50:", {r.p: r.a_p for r in recs})
print("admissible:", [r.p for r in recs if r.admissible])

# ## Quadratic twists with odd corank
#
# Over K = Q(sqrt D) with D < 0, the twisted root number is -1 exactly when
# chi_D(N) = +1.

print("chi_-3(37) =", kronecker(-3, 37), " odd corank over Q(sqrt -3):", odd_corank_fields_condition(37, -3))

# ## GL_2 order bound

c = gl2_bound_check(11, 1)
print(f"#GL_2(F_11) = {c.gl2_order}, #B = {c.borel_order}, passes: {c.passes}")

# ## Full report for one suite

print(run_examples("weight4").render(), end="")
