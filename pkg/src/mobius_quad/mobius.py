"""Möbius change of variables between the circle angle and the real line.

The map ``forward(theta) = -c * cot(theta / 2)`` sends the open interval
``(0, 2*pi)`` of polar angles monotonically onto the real line.  Angle ``0``
(equivalently ``2*pi``) is the preimage of infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * np.pi


def _check_open_angle(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(~((theta > 0.0) & (theta < TWO_PI))):
        bad = theta[~((theta > 0.0) & (theta < TWO_PI))]
        raise DomainError(f"angle must lie in (0, 2*pi), got {bad.ravel()[0]!r}")
    return theta


def _as_output(value):
    return value.item() if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class MobiusMap:
    """The transform ``x = -c cot(theta/2)`` with scale ``c > 0``.

    All methods accept scalars or arrays and return the same shape.
    """

    c: float = 1.0

    def __post_init__(self):
        c = float(self.c)
        if not np.isfinite(c) or c <= 0.0:
            raise ValueError(f"scale c must be a positive finite number, got {self.c!r}")
        object.__setattr__(self, "c", c)

    def forward(self, theta):
        """Map angles in ``(0, 2*pi)`` to the real line."""
        theta = _check_open_angle(theta)
        half = 0.5 * theta
        return _as_output(-self.c * np.cos(half) / np.sin(half))

    def inverse(self, x):
        """Map real points back to ``(0, 2*pi)``; ``inverse(0) == pi``.

        Uses ``2*atan2(c, -x)``, which picks the continuous increasing branch
        of ``2*arccot(-x/c)`` and stays accurate for large ``|x|``.
        """
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)):
            raise DomainError("inverse is defined for finite x only")
        return _as_output(2.0 * np.arctan2(self.c, -x))

    def derivative(self, theta):
        """``c / (2 sin^2(theta/2))``, positive on ``(0, 2*pi)``."""
        theta = _check_open_angle(theta)
        s = np.sin(0.5 * theta)
        return _as_output(self.c / (2.0 * s * s))

    def inverse_derivative(self, x):
        """``2c / (c^2 + x^2)``, the reciprocal of :meth:`derivative` at ``inverse(x)``."""
        x = np.asarray(x, dtype=float)
        return _as_output(2.0 * self.c / (self.c * self.c + x * x))

    # Unchecked kernels for callers that already excluded the endpoint.

    def _forward_unchecked(self, theta):
        half = 0.5 * theta
        return -self.c * np.cos(half) / np.sin(half)

    def _derivative_unchecked(self, theta):
        s = np.sin(0.5 * theta)
        return self.c / (2.0 * s * s)


# Module-level aliases mirroring the method names.

def forward(mobius: MobiusMap, theta):
    return mobius.forward(theta)


def inverse(mobius: MobiusMap, x):
    return mobius.inverse(x)


def forward_derivative(mobius: MobiusMap, theta):
    return mobius.derivative(theta)


def inverse_derivative(mobius: MobiusMap, x):
    return mobius.inverse_derivative(x)


@dataclass(frozen=True)
class QuadratureGrid:
    """Equispaced angles ``2*pi*j/n + shift`` for ``j = 0..n-1``.

    With ``shift == 0`` the first node sits on the singular angle 0; it is
    flagged by :attr:`has_endpoint` and handled by the integrand, which is
    defined to vanish there.
    """

    n: int
    shift: float
    angles: np.ndarray = field(repr=False)

    @property
    def has_endpoint(self) -> bool:
        return self.shift == 0.0

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n


def grid_angles(n: int, shift: float = 0.0) -> np.ndarray:
    # Computed as (2*pi*j)/n so that node 2j of the 2n grid is bit-identical
    # to node j of the n grid.
    return TWO_PI * np.arange(n, dtype=float) / n + shift


def make_grid(n: int, shift: float = 0.0) -> QuadratureGrid:
    """Build the ``n``-point grid with offset ``shift`` in ``[0, 2*pi/n)``."""
    if int(n) != n or n < 1:
        raise ValueError(f"node count must be a positive integer, got {n!r}")
    n = int(n)
    shift = float(shift)
    if not (0.0 <= shift < TWO_PI / n):
        raise ValueError(f"shift must lie in [0, 2*pi/n) = [0, {TWO_PI / n!r}), got {shift!r}")
    angles = grid_angles(n, shift)
    angles.setflags(write=False)
    return QuadratureGrid(n=n, shift=shift, angles=angles)
