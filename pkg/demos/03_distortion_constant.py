"""
The distortion constant C(r) and the separation it buys
=======================================================

C(r) converts a derivative gap at the origin into a pairwise separation
bound on every smaller circle.  This script tabulates C, shows the two
exact rational values used throughout the test suite, samples the
underlying chord inequality at random, and runs the separation check on
three maps.
"""

import numpy as np

from harmonicmaps import gallery_get
from harmonicmaps.distortion import (
    c_of_r,
    check_pairwise_bound,
    psi,
    star_inequality_check,
)

# C is strictly decreasing in r and increasing toward 1 as r -> 0.
print("      r    C(r, a=2)   C(r, a=3)   C(r, a=5)    psi(r)")
for r in (0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9):
    row = [c_of_r(r, a) for a in (2.0, 3.0, 5.0)]
    print(f"  {r:5.2f}   {row[0]:9.6f}   {row[1]:9.6f}   {row[2]:9.6f}   "
          f"{psi(r):8.5f}")

print()
print(f"exact checkpoints: C(0.5, 2) - 80/2916   = "
      f"{c_of_r(0.5, 2.0) - 80.0 / 2916.0:+.1e}")
print(f"                   C(0.5, 3) - 728/118098 = "
      f"{c_of_r(0.5, 3.0) - 728.0 / 118098.0:+.1e}")

# The chord inequality behind C: for |z1| = |z2| = x <= r the hyperbolic
# displacement tau satisfies |psi(tau)| >= 2 C(r) |z2 - z1| (up to the
# alpha-dependent normalization).  Equality is approached for antipodal
# pairs on the full circle.
rng = np.random.default_rng(3)
x = 0.7 * np.sqrt(rng.uniform(1e-6, 1.0, 50_000))
t1, t2 = rng.uniform(0.0, 2.0 * np.pi, (2, 50_000))
margins = star_inequality_check(x * np.exp(1j * t1), x * np.exp(1j * t2),
                                0.7, alpha=2.0)
print()
print(f"chord inequality, 50000 random pairs at r = 0.7: "
      f"min margin {np.min(margins):+.2e}")
eq = star_inequality_check(np.array([0.7]), np.array([-0.7]), 0.7, alpha=2.0)
print(f"antipodal pair on the rim: margin {float(eq[0]):+.2e} (equality case)")

# The separation check itself: |f(z2)-f(z1)| >= (|h'(0)|-|g'(0)|) C(r) |z2-z1|
# on 128 circle points.  The analytic Koebe map gets the sharper alpha = 2.
print()
for f, alpha in ((gallery_get("identity"), 3.0),
                 (gallery_get("f_k", {"k": 0.5}), 3.0),
                 (gallery_get("koebe"), 2.0)):
    for r in (0.3, 0.7):
        rep = check_pairwise_bound(f, r, alpha=alpha, n=128)
        print(f"  {f.label:<12} r={r}  alpha={alpha:g}  {rep.verdict:<18} "
              f"margin {rep.margin:+.4f}")
