"""
Randomized node count and shift
===============================

Draw M uniformly from {n//2, ..., n} and a uniform shift, then measure the
root-mean-square error over independent draws.
"""

import numpy as np

from mobius_quad import TransformedIntegrand, gaussian, rmse_study
from mobius_quad.weights import reference_abs_power_integral

ns = [2**k for k in range(3, 11)]
for p in (1, 3):
    ref = reference_abs_power_integral("gaussian", p)
    ti = TransformedIntegrand(lambda x, p=p: np.abs(x) ** p, gaussian())
    report = rmse_study(ti, ns, replications=200, reference=ref, seed=0)
    print(f"p={p}  slope {report.fitted_slope:.2f}")
    for e in report.entries:
        print(f"   {e.n:5d}  rmse {e.rmse:.3e}")

# the same seed reproduces every draw, whatever MOBIUS_QUAD_THREADS is set to
