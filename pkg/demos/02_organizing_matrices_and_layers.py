# # Organizing matrices and layer coranks
#
# An organizing matrix H is skew-Hermitian for iota: H^iota = -H^T, with entries
# in the maximal ideal.  Its cokernel at the layer Gamma / Gamma^{p^k} along one
# sign is a finite matrix over Z_p of size r p^k.

import numpy as np

from iwgrowth import (
    ActionSpec,
    check_skew_hermitian,
    coker_rank_at_layer,
    determinant,
    grouplike,
    iota,
    residual_corank,
    serialize,
)
from iwgrowth.sampling import random_organizing_matrix

spec = ActionSpec(3, 6, 12, "+-")

# ## A 1x1 example
#
# h = <gamma_-> - <gamma_->^{-1} is iota-odd, so [[h]] is skew-Hermitian.

g = grouplike(spec, [0, 1])
H = check_skew_hermitian([[g - iota(g)]])
print("det H =", serialize(determinant(H))[:70], "...")
print("residual corank:", residual_corank(H))

for sign in "+-":
    for k in range(2):
        rep = coker_rank_at_layer(H, sign, k)
        print(rep.line(), f"precision=p^{rep.precision}")

# ## Random instances
#
# H = A - (A^iota)^T + diag(x_i - x_i^iota) is skew-Hermitian by construction.
# det(H)^iota = (-1)^r det(H), and the residual corank has the parity of r.

rng = np.random.default_rng(0)
for r in (1, 2, 3):
    H = random_organizing_matrix(spec, r, rng, density=0.3)
    L = determinant(H)
    print(f"r={r}: det^iota == (-1)^r det: {iota(L) == L.scale((-1) ** r)}, residual corank {residual_corank(H)}")

# ## Both evaluation orders agree
#
# Reducing entries to the layer then expanding, or expanding first and then
# reducing, give the same corank.

H = random_organizing_matrix(spec, 2, rng, density=0.3)
a = coker_rank_at_layer(H, "+", 1, order="specialize_first").corank
b = coker_rank_at_layer(H, "+", 1, order="reduce_first").corank
print("coranks from both orders:", a, b)
