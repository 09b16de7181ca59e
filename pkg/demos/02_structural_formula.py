"""
The structural formula behind the directional criterion
=======================================================

Every comparison function that certifies a map through the directional
test has the same shape: an integral of rotated half-plane kernels
against a probability measure on the circle, composed with the inverse
map.  This script builds such a function for a discrete measure, checks
the derivative identity it must satisfy, and closes the loop by feeding
the induced ratio-test denominator back into the criterion.
"""

import numpy as np

from harmonicmaps import DiscreteMeasure, GridSpec, StructuralParams, gallery_get
from harmonicmaps.criteria import check_philike
from harmonicmaps.herglotz import (
    big_phi_function,
    build_phi,
    herglotz_p,
    invert,
    structural_phi_prime,
    verify_structural_identity,
)

# A three-atom measure: mass at angles 0, 2, and 4.5 on the unit circle.
mu = DiscreteMeasure(((0.0, 0.5), (2.0, 0.3), (4.5, 0.2)))
params = StructuralParams(c=1.0, c1=0.0, c0=0.0)

# The kernel average p has positive real part on the whole disk; its
# minimum over a grid is the margin the induced criterion will report.
grid = GridSpec(n_radial=24, n_angular=64, r_max=0.85)
p_vals = herglotz_p(mu, grid.points())
print(f"kernel average p: min Re = {np.min(p_vals.real):.4f}, "
      f"p(0) = {complex(herglotz_p(mu, 0.0j)):.4f}")

# The derivative identity d/dz phi(f(z)) = c p(z) - i c c1 pins the
# structure.  The deviation below is pure numerics: grid inversion plus
# finite differencing.
f = gallery_get("cayley")
dev = verify_structural_identity(f.h, mu, params, grid)
print(f"derivative identity deviation on the Cayley-type map: {dev:.2e}")

# phi itself, sampled along a radius of the image domain.
f_inv = lambda w: invert(f, w)
for s in (0.2, 0.5, 0.8):
    w = complex(f.h.eval(complex(s)))
    val = complex(build_phi(f_inv, mu, params, w))
    print(f"  phi(f({s:.1f})) = {val:.5f}")

# Closing the loop: Phi(w) = f^{-1}(w) / phi'(w) turns the structural
# comparison into a ratio-test denominator.  For the point mass at
# angle 0 on the full Koebe map, Phi collapses to the identity and the
# ratio test holds with the margin of Re p itself.
koebe = gallery_get("koebe")
point_mass = DiscreteMeasure(((0.0, 1.0),))
prime = structural_phi_prime(koebe.h, point_mass, StructuralParams())
Phi = big_phi_function(koebe.h, prime, gamma=0.0)
w_probe = complex(koebe.h.eval(0.4 + 0.1j))
print(f"\npoint-mass closure on the Koebe map: Phi(w) - w = "
      f"{complex(Phi.eval(w_probe)) - w_probe:.2e} at w = {w_probe:.3f}")
rep = check_philike(koebe.h, Phi, GridSpec(n_radial=10, n_angular=24, r_max=0.7))
print(f"induced ratio test: {rep.verdict}, margin {rep.margin:+.4f}")
