# # Signs of a principal ideal
#
# For a generator L of an ideal stable under an involution xi, L^xi = eps(xi) u L
# for a unit u.  eps(xi) is read from the initial form of L in the graded ring,
# and symmetrize() produces a generator that is an exact eigenvector.

import numpy as np

from iwgrowth import ActionSpec, epsilon_of, initial_form, iota, serialize, sigma, symmetrize
from iwgrowth.sampling import random_unit

spec = ActionSpec(3, 6, 10, "+-")
U1, U2 = spec.var(0), spec.var(1)

# ## Reading eps from an initial form
#
# L = U2 * (unit) + higher terms.  Its initial form is U2 up to a constant,
# which iota negates and sigma negates too (U2 is a '-' variable).

rng = np.random.default_rng(1)
L = U2 * random_unit(spec, rng) + U1 * U2 * 3
print("initial form:", initial_form(L))
print("eps(iota) =", epsilon_of(L, "iota"), " eps(sigma) =", epsilon_of(L, "sigma"))

# ## eps does not see units

u = random_unit(spec, rng)
print("eps(iota) of u L =", epsilon_of(u * L, "iota"))

# ## A symmetrized generator
#
# L = p (U1 - U1^iota) has content p; the content is stripped, recorded as mu,
# and the remaining factor is averaged into an exact eigenvector.

L = (U1 - iota(U1)).scale(3)
rec = symmetrize(L)
S = rec.symmetrized
print("mu =", rec.mu, " eps =", (rec.epsilon_iota, rec.epsilon_sigma, rec.epsilon_sigma_iota))
print("S^iota == eps(iota) S:", iota(S) == S.scale(rec.epsilon_iota))
print("S^sigma == eps(sigma) S:", sigma(S) == S.scale(rec.epsilon_sigma))
print("S =", serialize(S)[:70], "...")
