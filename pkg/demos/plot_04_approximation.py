"""
Approximation on the real line
==============================

Interpolate the pulled-back function by a trigonometric polynomial and push
the interpolant forward again.
"""

import numpy as np

from mobius_quad import MobiusMap, build_interpolant, gaussian, lp_error

f = lambda x: np.abs(x) ** 3

for n in [2**k for k in range(4, 11)]:
    interp = build_interpolant(f, gaussian(), MobiusMap(1.0), n, p=1.0)
    print(f"{n:5d}  L1 error {lp_error(f, interp):.3e}  node residual {interp.node_residual():.1e}")

# evaluate anywhere on the line
interp = build_interpolant(f, gaussian(), MobiusMap(1.0), 256, p=1.0)
x = np.array([-2.0, -0.7, 0.0, 0.7, 2.0])
print(np.column_stack([x, interp.eval_real(x), f(x)]))

# coefficients as JSON
print(interp.to_json()[:120], "...")
