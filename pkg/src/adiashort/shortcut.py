"""Zero-excess-work protocols for cosine spectra.

The shortcut is the ramp t/tau plus an antisymmetric comb of even-order
delta derivatives,

    sum_m w_m [delta^(2m)(t) - delta^(2m)(tau - t)],   m = 0 .. K-1.

For such a protocol G(w) = (e^{i w tau} - 1) * i * [w sum_m (-1)^m w_m w^(2m)
- 1/(w tau)], so G vanishes at every mode frequency iff

    sum_m (-1)^m (tau w_m) x_k^(m+1) = 1,   x_k = w_k**2,   k = 1 .. K,

a Vandermonde-type system in x_k that does not depend on tau once the
unknowns are taken as tau * w_m.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned, NonpositiveTau, SingularSystem, UnsupportedSpectrum
from .protocol import Protocol, build_universal, fourier_of_gdot
from .relaxation import RelaxationSpectrum
from .work import DriveParams, excess_work_spectral

MAX_CONDITION = 1e12


@dataclass(frozen=True)
class CombSolution:
    tau: float
    orders: tuple[int, ...]
    weights: tuple[float, ...]
    omega_n: tuple[float, ...]  # nan where the weight is not positive
    condition_number: float
    unit_weights: tuple[float, ...]  # tau * weights

    @property
    def all_positive(self) -> bool:
        return all(w > 0 for w in self.weights)

    def rescaled(self, tau: float) -> "CombSolution":
        """Same comb at another switching time (weights scale as 1/tau)."""
        if not tau > 0:
            raise NonpositiveTau(f"tau must be positive, got {tau}")
        return CombSolution(tau, self.orders, tuple(u / tau for u in self.unit_weights),
                            self.omega_n, self.condition_number, self.unit_weights)

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "orders": list(self.orders),
            "weights": list(self.weights),
            "omega_n": [None if math.isnan(o) else o for o in self.omega_n],
            "condition_number": self.condition_number,
        }


def _omega_n(unit_weights: np.ndarray) -> tuple[float, ...]:
    # weight_n = 1 / (tau Omega_n^(2n)), n counted from 1
    out = []
    for n, u in enumerate(unit_weights, start=1):
        out.append(float(u ** (-1.0 / (2 * n))) if u > 0 else float("nan"))
    return tuple(out)


def _unit_comb(spec: RelaxationSpectrum, max_condition: float) -> tuple[np.ndarray, float]:
    """Weights tau*w_m for m = 0..K-1 and the condition number of the scaled system."""
    if not spec.is_pure_cosine:
        raise UnsupportedSpectrum("comb solver needs a pure cosine spectrum")
    x = spec.frequencies**2
    K = len(x)
    if K > 1 and np.min(np.diff(x)) <= 1e-14 * x.max():
        raise SingularSystem("mode frequencies are not distinct")
    # columns scaled by (x_max)^(m+1) to keep entries in [0, 1]
    scale = x.max()
    powers = np.arange(1, K + 1)
    V = (x[:, None] / scale) ** powers[None, :]
    cond = float(np.linalg.cond(V))
    if not np.isfinite(cond):
        raise SingularSystem("comb system is singular")
    if cond > max_condition:
        raise IllConditioned(f"condition number {cond:.3g} exceeds {max_condition:.3g}")
    try:
        y = np.linalg.solve(V, np.ones(K))
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    u = y / scale**powers
    signs = (-1.0) ** np.arange(K)
    return signs * u, cond


def solve_comb(spec: RelaxationSpectrum, tau: float,
               max_condition: float = MAX_CONDITION) -> CombSolution:
    if not (math.isfinite(tau) and tau > 0):
        raise NonpositiveTau(f"tau must be positive, got {tau}")
    unit, cond = _unit_comb(spec, max_condition)
    return CombSolution(
        tau=float(tau),
        orders=tuple(2 * m for m in range(len(unit))),
        weights=tuple(float(u / tau) for u in unit),
        omega_n=_omega_n(unit),
        condition_number=cond,
        unit_weights=tuple(float(u) for u in unit),
    )


def build_shortcut(spec: RelaxationSpectrum, tau: float, comb: CombSolution | None = None) -> Protocol:
    """Ramp plus solved comb, assembled through the universal form with zero waiting time."""
    if comb is None:
        comb = solve_comb(spec, tau)
    # build_universal divides by tau itself
    return build_universal(0.0, list(zip(comb.orders, comb.unit_weights)), tau)


def zero_work_certificate(spec: RelaxationSpectrum, p: Protocol) -> np.ndarray:
    """|G(w_k)| at every mode frequency."""
    return np.abs(fourier_of_gdot(p, spec.frequencies))


@dataclass(frozen=True)
class VerificationRow:
    tau: float
    excess_work: float
    passed: bool


def worker_count(default: int = 0) -> int:
    raw = os.environ.get("ADIASHORT_THREADS", str(default))
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def verify_shortcut(spec: RelaxationSpectrum, tau_grid, drive: DriveParams, tol: float = 1e-10,
                    workers: int = 1) -> list[VerificationRow]:
    """Build and evaluate the shortcut at every tau; rows keep grid order."""
    tau_grid = [float(t) for t in tau_grid]
    if not tau_grid:
        raise ValueError("tau grid is empty")
    unit = solve_comb(spec, 1.0)
    bound = tol * drive.delta_lambda**2 * spec.psi0

    def row(tau: float) -> VerificationRow:
        w = excess_work_spectral(spec, build_shortcut(spec, tau, unit), drive).excess_work
        return VerificationRow(tau, w, abs(w) <= bound)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, tau_grid))
    return [row(t) for t in tau_grid]


def asymptotic_decay_check(spec: RelaxationSpectrum, tau_sequence) -> list[tuple[float, float]]:
    taus = [float(t) for t in tau_sequence]
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise ValueError("tau sequence must be increasing")
    unit = solve_comb(spec, 1.0)
    return [(t, max(abs(w) for w in unit.rescaled(t).weights)) for t in taus]
