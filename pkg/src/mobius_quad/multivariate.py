"""Componentwise Möbius transform and rank-1 lattice rules on the torus.

A product-weighted integral over R^d is pulled back to ``(0, 2*pi)^d`` one
coordinate at a time.  The resulting periodic integrand is integrated with an
equal-weight rank-1 lattice rule ``theta_i = 2*pi * frac(i z / n)``.  Points
with any zero coordinate contribute exactly zero, the product analogue of the
one-dimensional endpoint rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import bernoulli

from ._parallel import ordered_map
from .errors import NonFiniteIntegrandError
from .mobius import TWO_PI, MobiusMap, grid_angles


@dataclass(frozen=True)
class ProductWeight:
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) < 1:
            raise ValueError("need at least one component weight")

    @property
    def d(self) -> int:
        return len(self.components)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Weight at points ``x`` of shape ``(m, d)``."""
        x = np.atleast_2d(x)
        out = np.ones(x.shape[0])
        for k, w in enumerate(self.components):
            out = out * np.asarray(w(x[:, k]), dtype=float)
        return out


def _as_maps(maps, d: int) -> tuple:
    if isinstance(maps, MobiusMap):
        maps = [maps] * d
    maps = tuple(m if isinstance(m, MobiusMap) else MobiusMap(m) for m in maps)
    if len(maps) != d:
        raise ValueError(f"expected {d} maps, got {len(maps)}")
    return maps


def componentwise_forward(maps: Sequence[MobiusMap], thetas) -> np.ndarray:
    """Apply the 1-D forward map to each coordinate; ``thetas[..., k]`` uses ``maps[k]``."""
    thetas = np.asarray(thetas, dtype=float)
    d = thetas.shape[-1]
    maps = _as_maps(maps, d)
    return np.stack([maps[k].forward(thetas[..., k]) for k in range(d)], axis=-1)


@dataclass(frozen=True)
class LatticeRule:
    n: int
    z: tuple

    def __post_init__(self):
        z = tuple(int(v) for v in self.z)
        object.__setattr__(self, "z", z)
        if self.n < 1:
            raise ValueError("lattice needs n >= 1")
        for v in z:
            if self.n > 1 and not (1 <= v <= self.n - 1):
                raise ValueError(f"generator component {v} outside 1..{self.n - 1}")
            if math.gcd(v, self.n) != 1:
                raise ValueError(f"gcd({v}, {self.n}) != 1: projection would not be full")

    @property
    def d(self) -> int:
        return len(self.z)


def lattice_indices(rule: LatticeRule) -> np.ndarray:
    """Integer coordinates ``(i * z) mod n`` of shape ``(n, d)``."""
    i = np.arange(rule.n, dtype=np.int64)[:, None]
    return (i * np.asarray(rule.z, dtype=np.int64)[None, :]) % rule.n


def lattice_points(rule: LatticeRule, d: int = None) -> np.ndarray:
    """Angles ``2*pi*frac(i z / n)``, shape ``(n, d)``; row 0 is the origin."""
    if d is not None and d != rule.d:
        raise ValueError(f"rule has dimension {rule.d}, not {d}")
    return TWO_PI * lattice_indices(rule) / rule.n


def bernoulli_polynomial(m: int, x):
    b = bernoulli(m)
    coeffs = [math.comb(m, j) * b[j] for j in range(m + 1)]  # x^{m-j}
    return np.polyval(coeffs, x)


def _korobov_kernel_table(n: int, alpha: int) -> np.ndarray:
    # 1 + sum_{h != 0} |h|^{-2 alpha} e^{2 pi i h x} at x = m/n
    scale = (-1) ** (alpha + 1) * (2.0 * math.pi) ** (2 * alpha) / math.factorial(2 * alpha)
    return 1.0 + scale * bernoulli_polynomial(2 * alpha, np.arange(n) / n)


def korobov_generator(a: int, n: int, d: int) -> tuple:
    z, v = [], 1
    for _ in range(d):
        z.append(v)
        v = (v * a) % n
    return tuple(z)


def p_alpha(rule: LatticeRule, alpha: int = 2) -> float:
    """Worst-case squared error of the rule in the Korobov space of order ``alpha``."""
    table = _korobov_kernel_table(rule.n, alpha)
    return float(np.mean(np.prod(table[lattice_indices(rule)], axis=1)) - 1.0)


def _p_alpha_batch(candidates: np.ndarray, n: int, d: int, table: np.ndarray) -> np.ndarray:
    i = np.arange(n, dtype=np.int64)
    prod = np.ones((len(candidates), n))
    z = np.ones(len(candidates), dtype=np.int64)
    for _ in range(d):
        prod *= table[(z[:, None] * i[None, :]) % n]
        z = (z * candidates) % n
    return prod.mean(axis=1) - 1.0


def korobov_search(n: int, d: int, alpha: int = 2, block: int = 64) -> LatticeRule:
    """Korobov vector ``(1, a, ..., a^{d-1}) mod n`` minimising ``P_alpha``.

    Exhaustive over ``a``; ties (up to rounding) go to the smallest ``a``.
    """
    if int(alpha) != alpha or alpha < 1:
        raise ValueError("alpha must be a positive integer")
    if n < 2:
        raise ValueError("n must be at least 2")
    if d == 1:
        return LatticeRule(n, (1,))
    valid = [a for a in range(1, n) if all(math.gcd(v, n) == 1 for v in korobov_generator(a, n, d))]
    if not valid:
        raise ValueError(f"no Korobov parameter satisfies the gcd condition for n={n}, d={d}")
    # a and n - a generate lattices with identical P_alpha (the kernel is even),
    # so scanning a <= n/2 finds the same smallest minimiser.
    cands = np.array([a for a in valid if a <= n - a] or valid, dtype=np.int64)
    table = _korobov_kernel_table(n, alpha)
    chunks = [cands[s:s + block] for s in range(0, len(cands), block)]
    values = np.concatenate(ordered_map(lambda c: _p_alpha_batch(c, n, d, table), chunks))
    best = values.min()
    a = int(cands[np.flatnonzero(values <= best + 1e-12 * abs(best))[0]])
    return LatticeRule(n, korobov_generator(a, n, d))


def _transformed_integrand(f: Callable, weights: ProductWeight, maps: tuple, theta: np.ndarray) -> np.ndarray:
    out = np.zeros(theta.shape[0])
    inside = np.all((theta > 0.0) & (theta < TWO_PI), axis=1)
    if not np.any(inside):
        return out
    t = theta[inside]
    x = np.empty_like(t)
    jac = np.ones(t.shape[0])
    for k, m in enumerate(maps):
        x[:, k] = m._forward_unchecked(t[:, k])
        jac *= m._derivative_unchecked(t[:, k])
    fx = np.asarray(f(x), dtype=float)
    if fx.shape != (t.shape[0],):
        raise ValueError("f must map an (m, d) array of points to an (m,) array")
    bad = ~np.isfinite(fx)
    if np.any(bad):
        raise NonFiniteIntegrandError(tuple(float(v) for v in x[bad][0]))
    rho = weights(x)
    with np.errstate(invalid="ignore", over="ignore"):
        vals = fx * rho * jac
    out[inside] = np.where(rho == 0.0, 0.0, vals)
    return out


def integrate_lattice(f: Callable, weights: ProductWeight, maps, rule: LatticeRule) -> float:
    """``(2*pi)^d / n * sum_i G(theta_i)`` over the lattice points.

    ``f`` takes an ``(m, d)`` array and returns ``(m,)`` values.
    """
    d = weights.d
    if rule.d != d:
        raise ValueError(f"rule dimension {rule.d} does not match weight dimension {d}")
    maps = _as_maps(maps, d)
    values = _transformed_integrand(f, weights, maps, lattice_points(rule))
    return TWO_PI**d / rule.n * math.fsum(values)


def integrate_product_grid(f: Callable, weights: ProductWeight, maps, n: int) -> float:
    """Full tensor-product trapezoidal rule with ``n`` nodes per axis (``n^d`` points)."""
    d = weights.d
    maps = _as_maps(maps, d)
    axes = np.meshgrid(*([grid_angles(n)] * d), indexing="ij")
    theta = np.stack([a.ravel() for a in axes], axis=1)
    values = _transformed_integrand(f, weights, maps, theta)
    return (TWO_PI / n) ** d * math.fsum(values)

