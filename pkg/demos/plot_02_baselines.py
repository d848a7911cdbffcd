"""
Comparison with Gauss-Hermite and a single-exponential map
===========================================================

Same integrand, three rules, equal node counts.
"""

import numpy as np

from mobius_quad import gaussian, integrate_function
from mobius_quad.baselines import gauss_hermite_integrate, se_transform_integrate
from mobius_quad.weights import reference_abs_power_integral

f = lambda x: np.abs(x) ** 3
ref = reference_abs_power_integral("gaussian", 3)

print("     n      mobius   gauss-hermite   se-transform")
for n in [2**k for k in range(4, 13)]:
    e_m = abs(integrate_function(f, gaussian(), n) - ref)
    e_gh = abs(gauss_hermite_integrate(f, n) - ref)
    e_se = abs(se_transform_integrate(f, gaussian(), n) - ref)
    print(f"{n:6d}  {e_m:10.2e}  {e_gh:14.2e}  {e_se:13.2e}")

# Gauss-Hermite is exact for polynomials but the kink of |x|^3 at the origin
# limits it to an algebraic rate
