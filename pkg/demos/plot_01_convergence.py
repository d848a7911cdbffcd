"""
Trapezoidal rule on the circle
==============================

Integrate |x|^p against the standard normal and logistic densities by pulling
the real line back to the circle with x = -c cot(theta/2) and applying the
plain trapezoidal rule there.
"""

import numpy as np

from mobius_quad import TransformedIntegrand, convergence_study, gaussian, logistic
from mobius_quad.weights import reference_abs_power_integral

ladder = [2**k for k in range(4, 15)]

# one study per (weight, p); the reference is a closed form
for weight in (gaussian(), logistic()):
    for p in (1, 3, 5):
        ref = reference_abs_power_integral(weight.kind, p)
        report = convergence_study(TransformedIntegrand(lambda x, p=p: np.abs(x) ** p, weight), ladder, ref)
        print(f"{weight.kind:9s} p={p}  slope {report.fitted_slope:6.2f}  window {report.fit_window}")

# the error table behind a log-log plot
ref = reference_abs_power_integral("gaussian", 3)
report = convergence_study(TransformedIntegrand(lambda x: np.abs(x) ** 3, gaussian()), ladder, ref)
for e in report.entries:
    print(f"{e.n:6d}  {e.abs_error:.3e}")

# |x|^p has a jump in its p-th derivative at 0, so the observed decay is
# about n^-(p+1) until the rounding floor
