"""Laurent expansion of 1 / (s L{Psi''}(s)) around s = 0.

With Psi normalized to Psi(0) = 1 the transform of the second derivative
factors as ``s L{Psi''}(s) = -s**2 F(s)`` where

    F(s) = sum_k c_k w_k**2 / (s**2 + w_k**2) + sum_j A_j / (1 + s tau_j)

and F(0) = 1.  The Taylor coefficients of F are known exactly, so the
Laurent coefficients follow from a single power-series division 1 / F.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotExpandable, TruncationOverflow
from .relaxation import RelaxationSpectrum

MAX_ORDER = 64


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficients a_n of sum_{n >= -2} a_n s**n.

    ``a_regular`` holds a_0 .. a_M.  The coefficients are kept exactly as they
    come out of the expansion, so a single cosine mode has a_0 = -1/w**2; the
    comb weight that enters the protocol is -a_n (see ``protocol_weights``).
    """

    a_minus2: float
    a_minus1: float
    a_regular: tuple[float, ...]
    order: int
    waiting_time: float
    normalized: bool = True

    def protocol_weights(self, drop_zeros: bool = True) -> list[tuple[int, float]]:
        """(order, weight) pairs for ``protocol.build_universal``.

        Expanding a single mode gives a_0 = -1/w**2, while the zero-work
        protocol needs +1/(tau w**2) in front of delta(t) - delta(tau - t).
        The sign flip is applied here and nowhere else.
        """
        return [(n, -a) for n, a in enumerate(self.a_regular) if not (drop_zeros and a == 0.0)]


def default_order(spec: RelaxationSpectrum) -> int:
    return max(2 * len(spec.cosine_modes) - 2, 0)


def _taylor_F(spec: RelaxationSpectrum, n_terms: int) -> np.ndarray:
    psi0 = spec.psi0
    f = np.zeros(n_terms)
    for m in spec.cosine_modes:
        # c w^2/(s^2 + w^2) = c sum_m (-1)^m (s/w)^(2m)
        c = m.amplitude / psi0
        inv_w2 = 1.0 / m.angular_frequency**2
        term = c
        for k in range(0, n_terms, 2):
            f[k] += term
            term *= -inv_w2
    for m in spec.exponential_modes:
        # A/(1 + s tau) = A sum_m (-tau s)^m
        term = m.amplitude / psi0
        for k in range(n_terms):
            f[k] += term
            term *= -m.decay_time
    f[0] = 1.0  # sum of normalized amplitudes, exact by construction
    return f


def invert_series(f: np.ndarray) -> np.ndarray:
    """Reciprocal of a power series by long division, truncated to len(f) terms."""
    f = np.asarray(f, dtype=float)
    if f[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    b = np.zeros_like(f)
    b[0] = 1.0 / f[0]
    for j in range(1, len(f)):
        b[j] = -np.dot(f[1:j + 1], b[j - 1::-1]) / f[0]
    return b


def laurent_coefficients(spec: RelaxationSpectrum, order: int | None = None,
                         max_order: int = MAX_ORDER) -> SeriesCoefficients:
    if order is None:
        order = default_order(spec)
    if order < 0:
        raise ValueError("order must be >= 0")
    if order > max_order:
        raise TruncationOverflow(f"order {order} exceeds maximum {max_order}")
    if not (spec.is_pure_cosine or spec.is_pure_exponential):
        raise NotExpandable("expansion is defined for pure cosine or pure exponential spectra only")

    # 1/(s L{Psi''}) = -(1/F) / s^2, so a_{n} = -b_{n+2}
    b = invert_series(_taylor_F(spec, order + 3))
    a = -b
    return SeriesCoefficients(
        a_minus2=float(a[0]),
        a_minus1=float(a[1]),
        a_regular=tuple(float(x) for x in a[2:]),
        order=order,
        waiting_time=waiting_time(spec),
    )


def waiting_time(spec: RelaxationSpectrum) -> float:
    """L{Psi/Psi(0)} at s = 0; cosine modes contribute nothing."""
    psi0 = spec.psi0
    return float(sum(m.amplitude / psi0 * m.decay_time for m in spec.exponential_modes))


def is_shortcut_candidate(coeffs: SeriesCoefficients, tol: float = 1e-12) -> bool:
    return abs(coeffs.a_minus1) <= tol
