"""Rational reflection groupoids as points of the Plücker variety with frozen edges."""

import random
from fractions import Fraction

from reflgroupoids import cluster as K
from reflgroupoids.groupoid import check_finiteness, scheme_from_cvalues
from reflgroupoids.polygon import Triangulation

# One diagonal value in the square fixes the rest.  x = 4 gives a
# non-integral but still finite groupoid.
lab = K.ptolemy_complete(4, Triangulation.make(4, [(1, 3)]), {(1, 3): 4})
c = K.cvalues_from_labeling(lab)
print("c =", c, check_finiteness(scheme_from_cvalues(c)))

# Random rational seeds on a hexagon.
rng = random.Random(3)
t, vals = K.random_seed_values(rng, 6)
lab = K.ptolemy_complete(6, t, vals)
c = K.cvalues_from_labeling(lab)
print(t, vals)
print("c =", [str(x) for x in c], "on variety:", K.on_variety(c))

# The psi polynomials give the chord values back from c.
print(K.psi_poly(1, 5, 6), "=", lab.value(1, 5))

# Perturb one entry and the relation fails.
bad = list(c)
bad[0] += Fraction(1, 10)
print("residual:", K.eta_residual(bad).formatted())

# A 2 x n matrix realising c through its minors.
print(K.z_matrix((2, 1, 2, 1)))
print(K.verify_mu_identities(4).checks)
