"""
Two-dimensional lattice rule
============================

Product weight, componentwise transform, Korobov generating vector.
"""

import math

import numpy as np

from mobius_quad import MobiusMap, ProductWeight, gaussian, integrate_lattice, korobov_search

w = ProductWeight([gaussian(), gaussian()])
f = lambda x: np.abs(x[:, 0]) * np.abs(x[:, 1])
ref = 2 / math.pi

for n in [2**k for k in range(8, 15)]:
    rule = korobov_search(n, 2)
    q = integrate_lattice(f, w, MobiusMap(), rule)
    print(f"{n:6d}  z={rule.z}  relative error {abs(q - ref) / ref:.2e}")
