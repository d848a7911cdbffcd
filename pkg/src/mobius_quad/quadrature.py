"""Möbius-transformed trapezoidal rule for weighted integrals over the real line.

The integral ``int f(x) rho(x) dx`` is pulled back to the circle,

    g(theta) = f(phi(theta)) * rho(phi(theta)) * phi'(theta),

and integrated with the equal-weight trapezoidal rule at ``theta_j = 2*pi*j/n``.
For weights with rapidly decaying tails ``g`` and all its derivatives vanish at
``theta = 0``, so the node sitting there contributes exactly zero and is never
evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import NonFiniteIntegrandError
from .mobius import TWO_PI, MobiusMap, QuadratureGrid, grid_angles, make_grid
from .weights import WeightFunction

DEFAULT_ERROR_FLOOR = 1e-12
DEFAULT_LADDER = tuple(2**k for k in range(3, 15))


def _apply(f: Callable, x: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on an array, falling back to elementwise calls."""
    try:
        values = np.asarray(f(x), dtype=float)
    except (TypeError, ValueError):
        values = None
    if values is None or values.shape != x.shape:
        if values is not None and values.ndim == 0:
            values = np.full(x.shape, float(values))
        else:
            values = np.array([float(f(xi)) for xi in x.ravel()]).reshape(x.shape)
    return values


def _check_finite(values: np.ndarray, x: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise NonFiniteIntegrandError(float(x[bad].ravel()[0]))


def _interior(theta: np.ndarray) -> np.ndarray:
    return (theta > 0.0) & (theta < TWO_PI)


@dataclass(frozen=True)
class TransformedIntegrand:
    """``f`` against ``weight`` pulled back to the circle through ``mobius``.

    ``f`` should accept and return numpy arrays; scalar-only callables work
    too, at the cost of a Python loop.
    """

    f: Callable
    weight: WeightFunction
    mobius: MobiusMap = field(default_factory=MobiusMap)

    def __call__(self, theta):
        return evaluate_g(self, theta)


def evaluate_g(ti: TransformedIntegrand, theta):
    """Periodic integrand ``f(phi) rho(phi) phi'`` at angles in ``[0, 2*pi]``.

    Exactly zero at ``theta in {0, 2*pi}``; the map is not evaluated there.
    """
    theta = np.asarray(theta, dtype=float)
    scalar = theta.ndim == 0
    theta = np.atleast_1d(theta)
    if np.any((theta < 0.0) | (theta > TWO_PI) | np.isnan(theta)):
        raise ValueError("theta must lie in [0, 2*pi]")
    out = np.zeros(theta.shape)
    inside = _interior(theta)
    if np.any(inside):
        t = theta[inside]
        x = ti.mobius._forward_unchecked(t)
        fx = _apply(ti.f, x)
        _check_finite(fx, x)
        rho = np.asarray(ti.weight(x), dtype=float)
        jac = ti.mobius._derivative_unchecked(t)
        # rho underflows long before phi' overflows; keep those nodes at zero
        with np.errstate(invalid="ignore", over="ignore"):
            vals = fx * rho * jac
        out[inside] = np.where(rho == 0.0, 0.0, vals)
    return out[0] if scalar else out


def _weighted_sum(values: np.ndarray, n: int) -> float:
    # fsum is exactly rounded, so the result does not depend on evaluation
    # order; nested and direct evaluation agree bit for bit.
    return (TWO_PI / n) * math.fsum(values)


def integrate(ti: TransformedIntegrand, n: int, shift: float = 0.0) -> float:
    """``(2*pi/n) * sum_j g(2*pi*j/n + shift)``, ``j = 0..n-1``."""
    grid = make_grid(n, shift)
    return _weighted_sum(evaluate_g(ti, grid.angles), grid.n)


def integrate_function(f: Callable, weight: WeightFunction, n: int, c: float = 1.0,
                       shift: float = 0.0) -> float:
    """Convenience wrapper around :func:`integrate`."""
    return integrate(TransformedIntegrand(f, weight, MobiusMap(c)), n, shift)


@dataclass
class NestedState:
    """Cached integrand values on a grid that can be refined by doubling.

    ``values[j]`` holds ``g(grid.angles[j])``.  Owned by one caller at a time.
    """

    grid: QuadratureGrid
    values: np.ndarray
    running_sum: float
    evaluations: int = 0

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def estimate(self) -> float:
        return (TWO_PI / self.grid.n) * self.running_sum

    def is_consistent(self) -> bool:
        return self.running_sum == math.fsum(self.values)


def start_nested(ti: TransformedIntegrand, n: int, shift: float = 0.0) -> NestedState:
    grid = make_grid(n, shift)
    values = evaluate_g(ti, grid.angles)
    return NestedState(grid, values, math.fsum(values), evaluations=grid.n)


def refine(state: NestedState, ti: TransformedIntegrand) -> NestedState:
    """Double the node count, evaluating ``g`` only at the ``n`` new midpoints."""
    n, shift = state.grid.n, state.grid.shift
    if shift >= math.pi / n:
        raise ValueError(
            f"shift {shift!r} >= pi/n = {math.pi / n!r}: the doubled grid cannot contain the old nodes"
        )
    m = 2 * n
    fresh = evaluate_g(ti, grid_angles(m, shift)[1::2])
    values = np.empty(m)
    values[0::2] = state.values
    values[1::2] = fresh
    grid = make_grid(m, shift)
    return NestedState(grid, values, math.fsum(values), evaluations=state.evaluations + n)


@dataclass(frozen=True)
class ConvergenceEntry:
    n: int
    estimate: float
    abs_error: float


@dataclass
class ConvergenceReport:
    entries: List[ConvergenceEntry]
    reference: float
    fitted_slope: float
    fit_window: Optional[Tuple[int, int]]
    error_floor: float = DEFAULT_ERROR_FLOOR

    @property
    def has_slope(self) -> bool:
        return self.fit_window is not None

    @property
    def ns(self) -> np.ndarray:
        return np.array([e.n for e in self.entries])

    @property
    def errors(self) -> np.ndarray:
        return np.array([e.abs_error for e in self.entries])

    def to_dict(self) -> dict:
        return {
            "entries": [{"n": e.n, "estimate": e.estimate, "abs_error": e.abs_error} for e in self.entries],
            "reference": self.reference,
            "fitted_slope": self.fitted_slope if self.has_slope else None,
            "fit_window": list(self.fit_window) if self.fit_window else None,
            "error_floor": self.error_floor,
        }


def fit_loglog_slope(ns: Sequence[int], errors: Sequence[float], error_floor: float = DEFAULT_ERROR_FLOOR,
                     window: Optional[Tuple[int, int]] = None) -> Tuple[float, Optional[Tuple[int, int]]]:
    """Least-squares slope of ``log2(error)`` against ``log2(n)``.

    Only points with ``error > error_floor`` (and ``n`` inside ``window`` when
    given) are used.  Returns ``(nan, None)`` when fewer than three remain.
    """
    ns = np.asarray(ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    keep = errors > error_floor
    if window is not None:
        keep &= (ns >= window[0]) & (ns <= window[1])
    if np.count_nonzero(keep) < 3:
        return float("nan"), None
    slope = np.polyfit(np.log2(ns[keep]), np.log2(errors[keep]), 1)[0]
    return float(slope), (int(ns[keep].min()), int(ns[keep].max()))


def _is_doubling(ns: Sequence[int]) -> bool:
    return all(b == 2 * a for a, b in zip(ns, ns[1:]))


def convergence_study(ti: TransformedIntegrand, ns: Sequence[int] = DEFAULT_LADDER, reference: float = 0.0,
                      shift: float = 0.0, error_floor: float = DEFAULT_ERROR_FLOOR,
                      window: Optional[Tuple[int, int]] = None) -> ConvergenceReport:
    """Errors of the rule along a ladder of node counts, with a fitted rate.

    A doubling ladder with a nesting-compatible shift reuses evaluations.
    """
    ns = [int(n) for n in ns]
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("ns must be a non-empty strictly increasing sequence")
    if not math.isfinite(reference):
        raise ValueError("reference must be finite")
    estimates = []
    if _is_doubling(ns) and shift < TWO_PI / ns[-1]:
        state = start_nested(ti, ns[0], shift)
        estimates.append(state.estimate)
        for _ in ns[1:]:
            state = refine(state, ti)
            estimates.append(state.estimate)
    else:
        estimates = [integrate(ti, n, shift) for n in ns]
    entries = [ConvergenceEntry(n, q, abs(q - reference)) for n, q in zip(ns, estimates)]
    slope, used = fit_loglog_slope(ns, [e.abs_error for e in entries], error_floor, window)
    return ConvergenceReport(entries, reference, slope, used, error_floor)
