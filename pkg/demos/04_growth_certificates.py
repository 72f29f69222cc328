# # Growth certificates
#
# certify() combines the parity of the residual corank, the signs eps(iota) and
# eps(sigma) of det H, and exact layer coranks.  When the base parity is odd,
# at least one sign is forced, and along a forced sign the corank at layer k is
# at least p^k.

from pathlib import Path

import numpy as np

from iwgrowth import ActionSpec, certify, check_skew_hermitian, grouplike, iota, parse_matrix
from iwgrowth.sampling import random_organizing_matrix

data = Path(__file__).parent / "data"

# ## The two mirror examples

for name in ("gamma_minus.iwa", "gamma_plus.iwa"):
    H = parse_matrix((data / name).read_text())
    print(f"--- {name}")
    print(certify(H, k_max=1).render(), end="")

# ## A zero matrix
#
# det H vanishes to precision, so the module is not torsion and both signs are
# forced trivially.

H = parse_matrix((data / "zero.iwa").read_text())
print("--- zero.iwa: forced", certify(H).forced_label)

# ## Random sigma-equivariant instances of odd size

spec = ActionSpec(3, 10, 16, "+-")
rng = np.random.default_rng(7)
for _ in range(5):
    H = random_organizing_matrix(spec, 3, rng, sigma_parity="odd", density=0.3)
    cert = certify(H, k_max=1)
    layers = [rep.line() for rep in cert.layers if rep.sign in cert.forced_signs and rep.k == 1]
    print(f"parity={cert.base_parity} forced={cert.forced_label} {layers}")

# ## A matrix that mixes both signs
#
# <(1,1)> - <(1,1)>^iota involves gamma_+ and gamma_- together.  sigma does not
# act on its initial form by a sign, so no sign is forced, and the k = 1 layers
# stay below p^k.

spec = ActionSpec(5, 5, 10, "+-")
g = grouplike(spec, [1, 1])
H = check_skew_hermitian([[g - iota(g)]])
print(certify(H, k_max=1).render(), end="")
