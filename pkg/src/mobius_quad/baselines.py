"""Comparison rules: Gauss-Hermite and an inverse single-exponential transform.

The Gauss-Hermite rule is normalised for the standard normal density, so
``sum(w) == 1`` and ``sum(w * f(x)) ~ E[f(X)]`` for ``X ~ N(0, 1)``.

The single-exponential variant replaces the Möbius map by

    psi(theta) = 2 * artanh(-cos(theta / 2)) = 2 * log(tan(theta / 4)),

an increasing bijection ``(0, 2*pi) -> R`` with ``psi'(theta) = 1 / sin(theta/2)``.
It is the inverse of ``tanh(x/2)`` composed with ``-cos(theta/2)``.  This is
an experimental choice; no optimality result is known for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .mobius import TWO_PI, make_grid
from .quadrature import _apply, _check_finite, _interior
from .weights import WeightFunction

MAX_GAUSS_HERMITE_NODES = 4096


@dataclass(frozen=True)
class GaussRule:
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.nodes)


def _orthonormal_hermite(x: np.ndarray, n: int):
    """``(p_n(x), p_n'(x), log sum_{k<n} p_k(x)^2)`` for the orthonormal
    probabilists' Hermite polynomials, with rescaling to avoid overflow."""
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    dp = np.zeros_like(x)
    total = np.zeros_like(x)
    log_scale = np.zeros_like(x)
    for k in range(n):
        total += p * p
        s = math.sqrt(k + 1)
        p_next = (x * p - math.sqrt(k) * p_prev) / s
        dp_next = (p + x * dp - math.sqrt(k) * dp_prev) / s
        p_prev, p, dp_prev, dp = p, p_next, dp, dp_next
        big = np.abs(p) > 1e100
        if np.any(big):
            f = np.where(big, 1e-100, 1.0)
            p_prev, p, dp_prev, dp = p_prev * f, p * f, dp_prev * f, dp * f
            total *= f * f
            log_scale -= np.log(f)
    return p, dp, np.log(total) + 2.0 * log_scale


@lru_cache(maxsize=64)
def gauss_hermite_rule(n: int) -> GaussRule:
    """``n``-point Gauss rule for the standard normal weight.

    Nodes are eigenvalues of the Jacobi matrix of the Hermite recurrence
    (off-diagonal ``sqrt(k)``), polished by Newton steps on the orthonormal
    polynomial.  Weights are Christoffel numbers ``1 / sum_k p_k(x)^2``,
    which keep full relative accuracy for the tiny outer weights.
    """
    if isinstance(n, bool) or int(n) != n or not 1 <= n <= MAX_GAUSS_HERMITE_NODES:
        raise ValueError(f"n must be an integer in 1..{MAX_GAUSS_HERMITE_NODES}, got {n!r}")
    n = int(n)
    if n == 1:
        return GaussRule(np.zeros(1), np.ones(1))
    off = np.sqrt(np.arange(1, n, dtype=float))
    x = eigh_tridiagonal(np.zeros(n), off, eigvals_only=True)
    for _ in range(2):
        p, dp, _ = _orthonormal_hermite(x, n)
        x = x - p / dp
    x = 0.5 * (x - x[::-1])
    _, _, log_total = _orthonormal_hermite(x, n)
    w = np.exp(-log_total)
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return GaussRule(x, w)


def gauss_hermite_integrate(f: Callable, n: int, sigma: float = 1.0) -> float:
    """``sum_i w_i f(sigma x_i)``, approximating ``E[f(X)]`` for ``X ~ N(0, sigma^2)``."""
    rule = gauss_hermite_rule(n)
    x = sigma * np.asarray(rule.nodes)
    values = _apply(f, x)
    _check_finite(values, x)
    return math.fsum(np.asarray(rule.weights) * values)


def se_forward(theta):
    """``psi(theta) = 2 log tan(theta/4)`` on ``(0, 2*pi)``."""
    return 2.0 * np.log(np.tan(0.25 * np.asarray(theta, dtype=float)))


def se_derivative(theta):
    return 1.0 / np.sin(0.5 * np.asarray(theta, dtype=float))


def se_inverse(x):
    """``4 arctan(e^{x/2})``, i.e. ``theta`` with ``cos(theta/2) = -tanh(x/2)``."""
    with np.errstate(over="ignore"):
        return 4.0 * np.arctan(np.exp(0.5 * np.asarray(x, dtype=float)))


def se_transform_integrate(f: Callable, weight: WeightFunction, n: int, shift: float = 0.0) -> float:
    """Trapezoidal rule on ``f(psi) rho(psi) psi'`` with the endpoint value set to 0."""
    grid = make_grid(n, shift)
    theta = grid.angles
    g = np.zeros(grid.n)
    inside = _interior(theta)
    if np.any(inside):
        t = theta[inside]
        x = se_forward(t)
        fx = _apply(f, x)
        _check_finite(fx, x)
        rho = np.asarray(weight(x), dtype=float)
        with np.errstate(invalid="ignore", over="ignore"):
            vals = fx * rho * se_derivative(t)
        g[inside] = np.where(rho == 0.0, 0.0, vals)
    return (TWO_PI / grid.n) * math.fsum(g)
