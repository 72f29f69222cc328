# # The truncated Iwasawa algebra
#
# Elements live in Z_p[[U_1, ..., U_d]] modulo p^N and total degree > D.
# Each variable U_i = gamma_i - 1 carries a sign: '+' variables are fixed by
# sigma, '-' variables are inverted by it.  Run with `python3 demos/01_ring_and_involutions.py`.

from fractions import Fraction

from iwgrowth import ActionSpec, augment, grouplike, iota, serialize, sigma, sigma_iota, specialize

spec = ActionSpec(3, 6, 12, "+-")
print(spec.header())

# ## Grouplike elements
#
# <a> = prod (1 + U_i)^{a_i}, expanded by the binomial series.  Exponents may be
# p-adic integers given as fractions with denominator prime to p.

g = grouplike(spec, [1, 0])
h = grouplike(spec, [0, Fraction(1, 2)])
print("<(1,0)>   =", serialize(g))
print("<(0,1/2)> =", serialize(h)[:80], "...")
print("<(0,1/2)>^2 == <(0,1)>:", h * h == grouplike(spec, [0, 1]))

# ## Involutions
#
# iota inverts every gamma_i.  sigma inverts only the '-' variables, so on a
# grouplike it flips the sign of the '-' exponents.

a = [2, -1]
x = grouplike(spec, a)
print("iota <a>  == <-a>:", iota(x) == grouplike(spec, [-2, 1]))
print("sigma <a> == <(2,1)>:", sigma(x) == grouplike(spec, [2, 1]))
print("sigma iota <a> == <(-2,-1)>:", sigma_iota(x) == grouplike(spec, [-2, -1]))
print("iota is an involution:", iota(iota(x)) == x)

# ## Specialization and augmentation
#
# specialize(., '+') kills the '-' variables and keeps the '+' ones.  The
# augmentation is the image in Z_p / p^N.

y = x * 5 + spec.var(1) * 3
print("specialize(+):", serialize(specialize(y, "+")))
print("augment:", augment(y))
