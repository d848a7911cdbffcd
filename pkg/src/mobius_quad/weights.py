"""Weight functions on the real line and closed-form reference integrals.

A weight is anything that can be evaluated pointwise and is strictly
positive.  The transformed trapezoidal rule only ever evaluates the weight at
its nodes; no sampling, derivatives or normalising constants are needed.

Convergence rates are only guaranteed for smooth positive weights whose
derivatives all decay faster than any polynomial and which are monotone
outside some interval (Gaussian, logistic, ...).  Heavier tails such as
Student-t are accepted but come without rate guarantees; the library does
not try to verify this class from point values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

SQRT_2PI = math.sqrt(2.0 * math.pi)

# Generated by ``python -m mobius_quad._series`` (25 significant digits).
LN2 = 0.6931471805599453094172321
ZETA = {
    2: 1.644934066848226436472415,
    3: 1.202056903159594285399738,
    4: 1.082323233711138191516004,
    5: 1.036927755143369926331365,
    6: 1.017343061984449139714518,
    7: 1.008349277381922826839798,
    8: 1.004077356197944339378685,
    9: 1.002008392826082214417853,
    10: 1.000994575127818085337146,
    11: 1.000494188604119464558702,
    12: 1.000246086553308048298638,
}
ZETA3 = ZETA[3]
ZETA5 = ZETA[5]


@dataclass(frozen=True)
class WeightFunction:
    """A pointwise-evaluable positive weight.

    Parameters
    ----------
    evaluate : callable
        Vectorised map from real points to weight values.  Must be pure.
    kind : str
        ``"gaussian"``, ``"logistic"`` or ``"custom"``.
    param : float, optional
        Scale parameter of the built-in families (sigma or logistic scale).
    monotonicity_threshold : float, optional
        Informational ``K`` beyond which the weight is monotone.  Not used by
        any algorithm.
    """

    evaluate: Callable
    kind: str = "custom"
    param: Optional[float] = None
    monotonicity_threshold: Optional[float] = None

    def __call__(self, x):
        return self.evaluate(x)

    @property
    def label(self) -> str:
        if self.param is None:
            return self.kind
        return f"{self.kind}({self.param:g})"


def gaussian(sigma: float = 1.0) -> WeightFunction:
    """Centred normal density with standard deviation ``sigma``."""
    sigma = float(sigma)
    if not np.isfinite(sigma) or sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    norm = 1.0 / (sigma * SQRT_2PI)
    inv_two_var = 1.0 / (2.0 * sigma * sigma)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return norm * np.exp(-(x * x) * inv_two_var)

    return WeightFunction(evaluate, kind="gaussian", param=sigma)


def logistic(scale: float = 1.0) -> WeightFunction:
    """Logistic density ``e^{-x/s} / (s (1 + e^{-x/s})^2)``.

    Evaluated through ``e^{-|x|/s}`` so that large ``|x|`` never overflows.
    """
    scale = float(scale)
    if not np.isfinite(scale) or scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale!r}")

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        e = np.exp(-np.abs(x) / scale)
        return e / (scale * (1.0 + e) ** 2)

    return WeightFunction(evaluate, kind="logistic", param=scale)


def custom(evaluate: Callable, monotonicity_threshold: Optional[float] = None) -> WeightFunction:
    """Wrap a user-supplied vectorised density."""
    return WeightFunction(evaluate, kind="custom", monotonicity_threshold=monotonicity_threshold)


def _polylog_minus_one(p: int) -> float:
    # Li_p(-1) = -eta(p) = -(1 - 2^{1-p}) zeta(p); Li_1(-1) = -ln 2.
    if p == 1:
        return -LN2
    return -(1.0 - 2.0 ** (1 - p)) * ZETA[p]


def reference_abs_power_integral(kind: Union[str, WeightFunction], p: int) -> float:
    """Exact value of ``int |x|^p rho(x) dx`` for a unit-scale built-in weight.

    Gaussian: ``sqrt(2^p / pi) * Gamma((p + 1) / 2)``.
    Logistic: ``-2 p! Li_p(-1)``.

    Parameters
    ----------
    kind : {"gaussian", "logistic"} or WeightFunction
        A built-in weight at unit scale.
    p : int
        Exponent in ``1..12``.
    """
    if isinstance(kind, WeightFunction):
        if kind.kind not in ("gaussian", "logistic") or kind.param != 1.0:
            raise ValueError(f"no closed form for weight {kind.label}; only unit-scale built-ins")
        kind = kind.kind
    if isinstance(p, bool) or int(p) != p or not 1 <= p <= 12:
        raise ValueError(f"p must be an integer in 1..12, got {p!r}")
    p = int(p)
    if kind == "gaussian":
        return math.sqrt(2.0**p / math.pi) * math.gamma((p + 1) / 2.0)
    if kind == "logistic":
        return -2.0 * math.factorial(p) * _polylog_minus_one(p)
    raise ValueError(f"unsupported weight kind {kind!r}")
