"""Function approximation on the real line by trigonometric interpolation.

For a target error exponent ``p >= 1`` the function is pulled back to the
circle as

    g_p(theta) = f(phi(theta)) * (rho(phi(theta)) * phi'(theta)) ** (1/p),

interpolated by a trigonometric polynomial ``B_n`` through the samples at
``theta_j = 2*pi*j/n`` and pushed forward again,

    A_n f(x) = B_n(phi^{-1}(x)) * (rho(x) * phi'(phi^{-1}(x))) ** (-1/p).

The L^p_rho error of ``A_n f`` equals the plain L^p error of ``g_p - B_n``
on ``(0, 2*pi)``, which is what :func:`lp_error` computes.

Coefficients use the interpolatory normalisation ``(1/n) sum_j g(theta_j)
e^{-ik theta_j}``, which makes ``B_n`` reproduce the samples exactly.
Rates are proven for ``p < q`` where ``q`` is the integrability index of the
smoothness class of ``f``; that hypothesis is not checked here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import NumericalConsistencyError
from .mobius import TWO_PI, MobiusMap, grid_angles
from .quadrature import _apply, _check_finite, _interior
from .weights import WeightFunction, gaussian, logistic

IMAG_RESIDUE_TOL = 1e-9


def frequency_window(n: int):
    """``floor(-(n-1)/2) .. floor((n-1)/2)``; ``n`` integers for either parity."""
    return -(n // 2), (n - 1) // 2


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class FourierCoefficients:
    """Coefficients ordered from the most negative frequency upwards."""

    coeffs: np.ndarray
    n: int

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError("need exactly n coefficients")

    @property
    def frequencies(self) -> np.ndarray:
        lo, hi = frequency_window(self.n)
        return np.arange(lo, hi + 1)

    def __getitem__(self, k: int) -> complex:
        lo, hi = frequency_window(self.n)
        if not lo <= k <= hi:
            raise IndexError(f"frequency {k} outside window [{lo}, {hi}]")
        return complex(self.coeffs[k - lo])


def dft_direct(samples) -> FourierCoefficients:
    """O(n^2) reference transform by explicit summation."""
    samples = np.asarray(samples, dtype=complex)
    n = len(samples)
    theta = grid_angles(n)
    lo, hi = frequency_window(n)
    k = np.arange(lo, hi + 1)
    kernel = np.exp(-1j * np.outer(k, theta))
    return FourierCoefficients(kernel @ samples / n, n)


def dft(samples) -> FourierCoefficients:
    """Centered-window coefficients of samples taken at ``2*pi*j/n``.

    Powers of two go through the FFT; other sizes use direct summation.
    """
    samples = np.asarray(samples, dtype=complex)
    n = len(samples)
    if n < 1:
        raise ValueError("need at least one sample")
    if not _is_power_of_two(n):
        return dft_direct(samples)
    spectrum = np.fft.fft(samples) / n
    lo, hi = frequency_window(n)
    return FourierCoefficients(spectrum[np.arange(lo, hi + 1) % n], n)


def evaluate_gp(f: Callable, weight: WeightFunction, mobius: MobiusMap, theta, p: float) -> np.ndarray:
    """``g_p`` at angles in ``[0, 2*pi]``, exactly zero at the endpoints."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.zeros(theta.shape)
    inside = _interior(theta)
    if np.any(inside):
        t = theta[inside]
        x = mobius._forward_unchecked(t)
        fx = _apply(f, x)
        _check_finite(fx, x)
        density = np.asarray(weight(x), dtype=float) * mobius._derivative_unchecked(t)
        with np.errstate(invalid="ignore", over="ignore"):
            vals = fx * density ** (1.0 / p)
        out[inside] = np.where(density == 0.0, 0.0, vals)
    return out


def _horner(coeffs: np.ndarray, lo: int, theta: np.ndarray) -> np.ndarray:
    z = np.exp(1j * theta)
    acc = np.full(theta.shape, coeffs[-1], dtype=complex)
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc * np.exp(1j * lo * theta)


@dataclass(frozen=True)
class TrigInterpolant:
    coefficients: FourierCoefficients
    p: float
    weight: WeightFunction
    mobius: MobiusMap
    samples: np.ndarray = field(repr=False, default=None)

    @property
    def n(self) -> int:
        return self.coefficients.n

    def eval_periodic(self, theta):
        """``B_n(theta) = sum_k c_k e^{ik theta}``; complex-valued.

        For even ``n`` the lone Nyquist term ``c_{-n/2} e^{-i n theta/2}``
        makes this complex between the nodes even for real samples.
        """
        theta = np.asarray(theta, dtype=float)
        lo, _ = frequency_window(self.n)
        out = _horner(self.coefficients.coeffs, lo, np.atleast_1d(theta))
        return out[0] if theta.ndim == 0 else out

    def eval_symmetric(self, theta):
        """Like :meth:`eval_periodic` with the Nyquist term split as ``c cos(n theta/2)``.

        Agrees with :meth:`eval_periodic` at the nodes and is real-valued for
        real samples.
        """
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        out = self.eval_periodic(theta)
        if self.n % 2 == 0:
            lo, _ = frequency_window(self.n)
            c = self.coefficients.coeffs[0]
            out = out - c * np.exp(1j * lo * theta) + c * np.cos(lo * theta)
        return out

    def eval_real(self, x):
        """``A_n f(x)``, the interpolant pulled back to the real line."""
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        b = self.eval_symmetric(self.mobius.inverse(x))
        scale = np.sum(np.abs(self.coefficients.coeffs))
        residue = np.abs(b.imag)
        if np.any(residue > IMAG_RESIDUE_TOL * scale):
            raise NumericalConsistencyError(
                f"interpolant has imaginary part {residue.max():.3e} (coefficient mass {scale:.3e}); "
                "is f real-valued?"
            )
        density = np.asarray(self.weight(x), dtype=float) / self.mobius.inverse_derivative(x)
        out = b.real * density ** (-1.0 / self.p)
        return out[0] if scalar else out

    def node_values(self) -> np.ndarray:
        """``B_n`` at the exact nodes ``2*pi*j/n`` by inverse FFT.

        Avoids the rounding of the float angles, which :meth:`eval_periodic`
        amplifies by ``|B_n'|`` (up to about ``n/6`` times the sample scale).
        """
        spectrum = np.zeros(self.n, dtype=complex)
        spectrum[self.coefficients.frequencies % self.n] = self.coefficients.coeffs
        return np.fft.ifft(spectrum) * self.n

    def node_residual(self) -> float:
        """Largest ``|B_n(theta_j) - g_p(theta_j)|`` over the construction nodes."""
        if self.samples is None:
            raise ValueError("interpolant was built without stored samples")
        return float(np.max(np.abs(self.eval_periodic(grid_angles(self.n)) - self.samples)))

    def fine_grid_values(self, n_ref: int) -> np.ndarray:
        """Real interpolant on ``2*pi*j/n_ref`` by zero-padded inverse FFT."""
        if n_ref < self.n:
            raise ValueError("n_ref must be at least n")
        spectrum = np.zeros(n_ref, dtype=complex)
        coeffs = self.coefficients.coeffs.copy()
        ks = self.coefficients.frequencies
        if self.n % 2 == 0 and n_ref > self.n:
            half = coeffs[0] / 2.0
            coeffs[0] = half
            spectrum[(self.n // 2) % n_ref] += half
        np.add.at(spectrum, ks % n_ref, coeffs)
        return (np.fft.ifft(spectrum) * n_ref).real

    def to_dict(self) -> dict:
        c = self.coefficients.coeffs
        return {
            "n": self.n,
            "p": self.p,
            "c": self.mobius.c,
            "weight_kind": self.weight.kind,
            "weight_param": self.weight.param,
            "coeff_re": [float(v) for v in c.real],
            "coeff_im": [float(v) for v in c.imag],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict, weight: Optional[WeightFunction] = None) -> "TrigInterpolant":
        """Rebuild an exported interpolant; custom weights must be passed in."""
        if weight is None:
            kind, param = data["weight_kind"], data.get("weight_param")
            if kind == "gaussian":
                weight = gaussian(param if param is not None else 1.0)
            elif kind == "logistic":
                weight = logistic(param if param is not None else 1.0)
            else:
                raise ValueError(f"weight of kind {kind!r} must be supplied explicitly")
        coeffs = np.asarray(data["coeff_re"], dtype=float) + 1j * np.asarray(data["coeff_im"], dtype=float)
        return cls(FourierCoefficients(coeffs, int(data["n"])), float(data["p"]), weight, MobiusMap(data["c"]))


def build_interpolant(f: Callable, weight: WeightFunction, mobius: MobiusMap, n: int, p: float = 1.0) -> TrigInterpolant:
    """Trigonometric interpolant of ``g_p`` at ``n`` equispaced angles."""
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    if not p >= 1.0:
        raise ValueError(f"target exponent p must be >= 1, got {p!r}")
    n = int(n)
    samples = evaluate_gp(f, weight, mobius, grid_angles(n), p)
    return TrigInterpolant(dft(samples), float(p), weight, mobius, samples)


def lp_error(f: Callable, interp: TrigInterpolant, weight: Optional[WeightFunction] = None,
             p: Optional[float] = None, n_ref: Optional[int] = None) -> float:
    """``||f - A_n f||`` in ``L^p_rho``, via a fine periodic trapezoidal rule.

    ``weight`` and ``p`` default to those the interpolant was built with.
    ``n_ref`` defaults to ``max(8 n, 4096)`` and may not be smaller than ``8 n``.
    """
    weight = interp.weight if weight is None else weight
    p = interp.p if p is None else float(p)
    if n_ref is None:
        n_ref = max(8 * interp.n, 4096)
    if n_ref < 8 * interp.n:
        raise ValueError(f"n_ref = {n_ref} is below 8 n = {8 * interp.n}")
    theta = grid_angles(n_ref)
    diff = evaluate_gp(f, weight, interp.mobius, theta, p) - interp.fine_grid_values(n_ref)
    return float((TWO_PI / n_ref * np.sum(np.abs(diff) ** p)) ** (1.0 / p))
