"""Excess work of a protocol under a given relaxation spectrum.

Two independent routes are provided:

* ``excess_work_spectral``: for cosine spectra the quadratic form collapses to
  (dl**2 / 2) sum_k c_k |G(w_k)|**2 with G the Fourier transform of dg.
  Exact up to rounding, distributions included.
* ``excess_work_quadrature``: time-domain double integral over the lower
  triangle 0 <= t' <= t with every distribution in dg replaced by Gaussian
  derivatives of a finite width.  ``excess_work_extrapolated`` removes the
  width dependence by Richardson extrapolation.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite_e import hermeval
from scipy.signal import lfilter
from scipy.special import ndtr

from .errors import GridTooCoarse, UnresolvedComb, UnsupportedSpectrum
from .protocol import Protocol, fourier_of_gdot
from .relaxation import RelaxationSpectrum, eval_psi_derivative

WEAK_DRIVE_THRESHOLD = 0.2


@dataclass(frozen=True)
class DriveParams:
    delta_lambda: float = 1.0
    lambda0: float = float("nan")

    def __post_init__(self):
        if not math.isfinite(self.delta_lambda):
            raise ValueError("delta_lambda must be finite")

    @property
    def weak_drive_ratio(self) -> float:
        if math.isnan(self.lambda0):
            return float("nan")
        if self.lambda0 == 0:
            return float("inf")
        return abs(self.delta_lambda / self.lambda0)

    @property
    def weak_drive_warning(self) -> bool:
        """True when |dl / l0| exceeds the heuristic linear-response threshold."""
        return self.weak_drive_ratio > WEAK_DRIVE_THRESHOLD


@dataclass(frozen=True)
class WorkResult:
    excess_work: float
    per_mode: tuple[tuple[float, float], ...]
    method: str


def _require_cosine(spec: RelaxationSpectrum):
    if not spec.is_pure_cosine:
        raise UnsupportedSpectrum("operation needs a pure cosine spectrum")


def excess_work_spectral(spec: RelaxationSpectrum, p: Protocol, drive: DriveParams) -> WorkResult:
    _require_cosine(spec)
    omegas, amps = spec.frequencies, spec.amplitudes
    G = fourier_of_gdot(p, omegas)
    contrib = 0.5 * drive.delta_lambda**2 * amps * np.abs(G) ** 2
    return WorkResult(
        float(np.sum(contrib)),
        tuple((float(w), float(c)) for w, c in zip(omegas, contrib)),
        "spectral",
    )


def normalized_work(spec: RelaxationSpectrum, result: WorkResult, drive: DriveParams) -> float:
    """Excess work in units of dl**2 Psi(0) / 2, the single-mode quench value."""
    return result.excess_work / (0.5 * drive.delta_lambda**2 * spec.psi0)


# --- mollified time-domain oracle -------------------------------------------

def _gaussian_derivative(x: np.ndarray, width: float, order: int) -> np.ndarray:
    z = x / width
    coef = np.zeros(order + 1)
    coef[order] = 1.0
    return (-1) ** order * hermeval(z, coef) * np.exp(-0.5 * z * z) / (
        math.sqrt(2 * math.pi) * width ** (order + 1))


def mollified_gdot(p: Protocol, t: np.ndarray, width: float) -> np.ndarray:
    """Gaussian-smoothed distributional derivative of g on the grid ``t``."""
    out = np.zeros_like(t)
    ts = p.times
    for t1, t2, slope in zip(ts[:-1], ts[1:], p.slopes):
        out += slope * (ndtr((t - t1) / width) - ndtr((t - t2) / width))
    out += p.jump_at_start * _gaussian_derivative(t, width, 0)
    out += p.jump_at_end * _gaussian_derivative(t - p.tau, width, 0)
    for s in p.singular_terms:
        n = s.derivative_order
        out += s.weight_at_start * _gaussian_derivative(t, width, n + 1)
        out += (-1) ** n * s.weight_at_end * _gaussian_derivative(t - p.tau, width, n + 1)
    return out


def _causal_convolution(f: np.ndarray, h: float, rate: complex) -> np.ndarray:
    """I_i = trapezoid over t_j <= t_i of exp(rate (t_i - t_j)) f_j."""
    step = np.exp(rate * h)
    # I_i = step I_{i-1} + h/2 (step f_{i-1} + f_i), I_0 = 0
    x = np.zeros(len(f), dtype=complex)
    x[1:] = 0.5 * h * (step * f[:-1] + f[1:])
    return lfilter([1.0], [1.0, -step], x)


def _minimum_spacing(spec: RelaxationSpectrum, width: float) -> float:
    h = width / 8.0
    if spec.cosine_modes:
        h = min(h, 0.05 / float(spec.frequencies.max()))
    return h


def excess_work_quadrature(spec: RelaxationSpectrum, p: Protocol, drive: DriveParams,
                           mollifier_width: float, grid_points: int | None = None,
                           margin: float = 10.0) -> WorkResult:
    """Mollified evaluation of dl**2 int_0^tau int_0^t Psi(t-t') g'(t') g'(t) dt' dt.

    The grid covers [-margin*w, tau + margin*w] so the smoothed endpoint
    distributions keep their full mass.  Delta derivatives of order n are
    smoothed to Gaussians of size ~ w**-(n+2); beyond n ~ 4 the double
    integral loses most of its digits to cancellation.
    """
    w = float(mollifier_width)
    if not w > 0:
        raise ValueError("mollifier width must be positive")
    lo, hi = -margin * w, p.tau + margin * w
    if grid_points is None:
        grid_points = int(math.ceil((hi - lo) / _minimum_spacing(spec, w))) + 1
    h = (hi - lo) / (grid_points - 1)
    if spec.cosine_modes and h > 0.05 / float(spec.frequencies.max()) * (1 + 1e-12):
        raise GridTooCoarse(f"spacing {h:.3g} does not resolve the fastest mode")
    if h > w / 8.0 * (1 + 1e-12):
        raise UnresolvedComb(f"spacing {h:.3g} does not resolve mollifier width {w:.3g}")

    t = np.linspace(lo, hi, grid_points)
    gdot = mollified_gdot(p, t, w)

    def outer(inner):
        return drive.delta_lambda**2 * np.trapezoid(gdot * inner, dx=h)

    per_mode = []
    for m in spec.cosine_modes:
        inner = m.amplitude * _causal_convolution(gdot, h, 1j * m.angular_frequency).real
        per_mode.append((m.angular_frequency, float(outer(inner))))
    for m in spec.exponential_modes:
        inner = m.amplitude * _causal_convolution(gdot, h, -1.0 / m.decay_time).real
        per_mode.append((m.decay_time, float(outer(inner))))
    return WorkResult(float(sum(c for _, c in per_mode)), tuple(per_mode), "quadrature")


def default_width(spec: RelaxationSpectrum, tau: float) -> float:
    if spec.is_pure_cosine:
        return 0.5 / float(spec.frequencies.max())
    return tau / 20.0


def excess_work_extrapolated(spec: RelaxationSpectrum, p: Protocol, drive: DriveParams,
                             width: float | None = None, levels: int | None = None) -> WorkResult:
    """Quadrature at a decreasing sequence of widths, extrapolated to zero width.

    For cosine kernels the smoothing multiplies each mode by exp(-(w_k w)**2),
    so the values are fitted by a polynomial in w**2 over widths shrinking by
    sqrt(2).  Widths are kept near 1/w_max rather than pushed to zero because
    high-order delta derivatives lose digits to cancellation as w shrinks.
    Exponential kernels have a kink at the origin; jumps then produce odd
    powers, so the fit is a polynomial in w over widths halving each level.
    """
    if width is None:
        width = default_width(spec, p.tau)
    if spec.is_pure_cosine:
        levels = levels or 5
        widths = width * 2.0 ** (-0.5 * np.arange(levels))
        x = widths**2
    else:
        levels = levels or 4
        widths = width * 2.0 ** -np.arange(levels)
        x = widths
    values = np.array([excess_work_quadrature(spec, p, drive, wi).excess_work for wi in widths])
    coeffs = np.polynomial.polynomial.polyfit(x, values, levels - 1)
    return WorkResult(float(coeffs[0]), (), "quadrature")


# --- Euler-Lagrange residual and optimal-work formula ---------------------------

def _segment_integrals(p: Protocol, omega: float, t_ref) -> np.ndarray:
    """sum over segments of exp(i w t_ref) int e^{-i w t'} g_c(t') dt'.

    Real part gives int cos(w (t_ref - t')) g_c(t') dt', imaginary part the
    matching sine integral.
    """
    t_ref = np.asarray(t_ref, dtype=float)
    ts, gs = p.times, p.values
    total = np.zeros(t_ref.shape, dtype=complex)
    for t1, t2, g1, slope in zip(ts[:-1], ts[1:], gs[:-1], p.slopes):
        alpha, beta = g1 - slope * t1, slope

        def anti(x):
            return np.exp(-1j * omega * x) * (1j * (alpha + beta * x) / omega + beta / omega**2)

        total = total + (anti(t2) - anti(t1))
    return np.exp(1j * omega * t_ref) * total


def euler_lagrange_residual(spec: RelaxationSpectrum, p: Protocol, t_samples) -> np.ndarray:
    """int_0^tau Psi''(t - t') g(t') dt' - Psi'(tau - t) at each sample time."""
    _require_cosine(spec)
    t = np.asarray(t_samples, dtype=float)
    lhs = np.zeros_like(t)
    for m in spec.cosine_modes:
        lhs -= m.amplitude * m.angular_frequency**2 * _segment_integrals(
            p, m.angular_frequency, t).real
    for s in p.singular_terms:
        n = s.derivative_order
        lhs += s.weight_at_start * eval_psi_derivative(spec, t, n + 2)
        lhs += (-1) ** n * s.weight_at_end * eval_psi_derivative(spec, t - p.tau, n + 2)
    return lhs - eval_psi_derivative(spec, p.tau - t, 1)


def optimal_excess_work(spec: RelaxationSpectrum, p: Protocol, drive: DriveParams) -> float:
    """(dl**2/2) [Psi(0) + int_0^tau Psi'(tau - t) g(t) dt].

    Only equals the excess work when ``p`` satisfies the Euler-Lagrange
    equation; no optimality check is made.
    """
    _require_cosine(spec)
    # Psi'(tau - t) = -sum c w sin(w (tau - t))
    pairing = 0.0
    for m in spec.cosine_modes:
        pairing -= m.amplitude * m.angular_frequency * float(
            _segment_integrals(p, m.angular_frequency, p.tau).imag)
    for s in p.singular_terms:
        n = s.derivative_order
        pairing += s.weight_at_start * eval_psi_derivative(spec, p.tau, n + 1)
        pairing += (-1) ** n * s.weight_at_end * eval_psi_derivative(spec, 0.0, n + 1)
    return 0.5 * drive.delta_lambda**2 * (spec.psi0 + pairing)


def check_weak_drive(drive: DriveParams) -> None:
    if drive.weak_drive_warning:
        warnings.warn(
            f"|delta_lambda/lambda0| = {drive.weak_drive_ratio:.3g} exceeds "
            f"{WEAK_DRIVE_THRESHOLD}; linear response may not hold",
            stacklevel=2,
        )

