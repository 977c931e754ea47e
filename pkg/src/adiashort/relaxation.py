"""Relaxation functions stored as finite spectral sums.

A relaxation function is represented as

    Psi(t) = sum_k c_k cos(omega_k t) + sum_j A_j exp(-|t| / tau_j)

The cosine part describes thermally isolated systems; the exponential part
is kept only so that waiting times of isothermal-like kernels can be
computed.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateSpectrum, InvalidSpectrum, KinkAtZero

MERGE_RTOL = 1e-12


@dataclass(frozen=True)
class CosineMode:
    amplitude: float
    angular_frequency: float

    def __post_init__(self):
        if not (math.isfinite(self.amplitude) and self.amplitude >= 0):
            raise InvalidSpectrum(f"cosine amplitude must be >= 0, got {self.amplitude}")
        if not (math.isfinite(self.angular_frequency) and self.angular_frequency > 0):
            raise InvalidSpectrum(
                f"angular frequency must be positive and finite, got {self.angular_frequency}"
            )


@dataclass(frozen=True)
class ExponentialMode:
    amplitude: float
    decay_time: float

    def __post_init__(self):
        if not (math.isfinite(self.amplitude) and self.amplitude >= 0):
            raise InvalidSpectrum(f"exponential amplitude must be >= 0, got {self.amplitude}")
        if not (math.isfinite(self.decay_time) and self.decay_time > 0):
            raise InvalidSpectrum(f"decay time must be positive, got {self.decay_time}")


def _merge(pairs: Iterable[tuple[float, float]]) -> list[tuple[float, float]]:
    """Sort (key, amplitude) pairs by key and sum amplitudes of equal keys."""
    merged: list[tuple[float, float]] = []
    for key, amp in sorted(pairs):
        if merged and abs(key - merged[-1][0]) <= MERGE_RTOL * max(abs(key), abs(merged[-1][0])):
            merged[-1] = (merged[-1][0], merged[-1][1] + amp)
        else:
            merged.append((key, amp))
    return merged


@dataclass(frozen=True)
class RelaxationSpectrum:
    """Canonical spectral form of a relaxation function.

    Modes are sorted by ascending frequency (decay time for exponentials) and
    modes closer than a relative 1e-12 are merged by adding amplitudes.
    """

    cosine_modes: tuple[CosineMode, ...] = ()
    exponential_modes: tuple[ExponentialMode, ...] = field(default=())

    def __post_init__(self):
        cos = _merge((m.angular_frequency, m.amplitude) for m in self.cosine_modes)
        exp = _merge((m.decay_time, m.amplitude) for m in self.exponential_modes)
        object.__setattr__(self, "cosine_modes", tuple(CosineMode(a, w) for w, a in cos))
        object.__setattr__(self, "exponential_modes", tuple(ExponentialMode(a, t) for t, a in exp))
        if not cos and not exp:
            raise InvalidSpectrum("spectrum needs at least one mode")
        if not self.psi0 > 0:
            raise InvalidSpectrum("Psi(0) = sum of amplitudes must be positive")

    @classmethod
    def cosine(cls, amplitudes: Sequence[float], frequencies: Sequence[float]) -> "RelaxationSpectrum":
        if len(amplitudes) != len(frequencies):
            raise InvalidSpectrum("amplitudes and frequencies differ in length")
        return cls(tuple(CosineMode(float(a), float(w)) for a, w in zip(amplitudes, frequencies)))

    @classmethod
    def exponential(cls, amplitudes: Sequence[float], decay_times: Sequence[float]) -> "RelaxationSpectrum":
        if len(amplitudes) != len(decay_times):
            raise InvalidSpectrum("amplitudes and decay times differ in length")
        return cls(exponential_modes=tuple(
            ExponentialMode(float(a), float(t)) for a, t in zip(amplitudes, decay_times)
        ))

    @property
    def psi0(self) -> float:
        return float(sum(m.amplitude for m in self.cosine_modes)
                     + sum(m.amplitude for m in self.exponential_modes))

    @property
    def is_pure_cosine(self) -> bool:
        return not self.exponential_modes

    @property
    def is_pure_exponential(self) -> bool:
        return not self.cosine_modes

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([m.amplitude for m in self.cosine_modes])

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([m.angular_frequency for m in self.cosine_modes])

    def to_dict(self) -> dict:
        return {
            "cosine": [{"amplitude": m.amplitude, "omega": m.angular_frequency}
                       for m in self.cosine_modes],
            "exponential": [{"amplitude": m.amplitude, "tau_r": m.decay_time}
                            for m in self.exponential_modes],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RelaxationSpectrum":
        try:
            cos = tuple(CosineMode(float(m["amplitude"]), float(m["omega"]))
                        for m in data.get("cosine", []))
            exp = tuple(ExponentialMode(float(m["amplitude"]), float(m["tau_r"]))
                        for m in data.get("exponential", []))
        except (KeyError, TypeError) as exc:
            raise InvalidSpectrum(f"malformed spectrum JSON: {exc}") from exc
        return cls(cos, exp)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "RelaxationSpectrum":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class IsingChainParams:
    coupling_J: float = 1.0
    field_Gamma0: float = 0.95
    spin_count_N: int = 10
    hbar: float = 1.0

    def __post_init__(self):
        if not self.coupling_J > 0:
            raise InvalidSpectrum("J must be positive")
        if not self.field_Gamma0 >= 0:
            raise InvalidSpectrum("Gamma0 must be non-negative")
        if not self.hbar > 0:
            raise InvalidSpectrum("hbar must be positive")
        if int(self.spin_count_N) != self.spin_count_N or self.spin_count_N < 2:
            raise InvalidSpectrum("N must be an integer >= 2")
        if self.spin_count_N % 2:
            raise InvalidSpectrum("N must be even")

    def mode_angles(self) -> np.ndarray:
        n = np.arange(1, self.spin_count_N // 2 + 1)
        return (2 * n - 1) * np.pi / self.spin_count_N

    def single_particle_energies(self) -> np.ndarray:
        J, G = self.coupling_J, self.field_Gamma0
        return 2.0 * np.sqrt(J**2 + G**2 - 2 * J * G * np.cos(self.mode_angles()))


def make_ising_spectrum(params: IsingChainParams) -> RelaxationSpectrum:
    """Zero-temperature relaxation function of the periodic transverse-field Ising chain."""
    J, N = params.coupling_J, params.spin_count_N
    eps = params.single_particle_energies()
    if np.any(eps <= 1e-12 * (J + params.field_Gamma0)):
        raise DegenerateSpectrum("gap closes: epsilon(n) = 0 for some mode")
    amps = (16.0 / N) * J**2 / eps**3 * np.sin(params.mode_angles()) ** 2
    return RelaxationSpectrum.cosine(amps, 2.0 * eps / params.hbar)


def eval_psi(spec: RelaxationSpectrum, t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for m in spec.cosine_modes:
        out = out + m.amplitude * np.cos(m.angular_frequency * t)
    for m in spec.exponential_modes:
        out = out + m.amplitude * np.exp(-np.abs(t) / m.decay_time)
    return out if out.ndim else float(out)


def _cos_derivative(omega: float, t, order: int):
    # cycle cos, -sin, -cos, sin; kept exact so odd orders vanish at t = 0
    sign, trig = ((1, np.cos), (-1, np.sin), (-1, np.cos), (1, np.sin))[order % 4]
    return sign * omega**order * trig(omega * t)


def eval_psi_derivative(spec: RelaxationSpectrum, t, order: int = 1):
    """Exact ``order``-th time derivative of Psi, term by term.

    Exponential modes are differentiated as exp(-|t|/tau) away from t = 0;
    at t = 0 their derivative does not exist and ``KinkAtZero`` is raised.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for m in spec.cosine_modes:
        out = out + m.amplitude * _cos_derivative(m.angular_frequency, t, order)
    if spec.exponential_modes:
        if np.any(t == 0):
            raise KinkAtZero("exponential modes have no derivative at t = 0")
        sign = np.sign(t)
        for m in spec.exponential_modes:
            rate = -sign / m.decay_time
            out = out + m.amplitude * rate**order * np.exp(-np.abs(t) / m.decay_time)
    return out if out.ndim else float(out)


def laplace_psi(spec: RelaxationSpectrum, s: float) -> float:
    """One-sided Laplace transform of Psi at real s > 0."""
    if not s > 0:
        raise ValueError("s must be positive")
    total = 0.0
    for m in spec.cosine_modes:
        total += m.amplitude * s / (s * s + m.angular_frequency**2)
    for m in spec.exponential_modes:
        total += m.amplitude * m.decay_time / (1.0 + s * m.decay_time)
    return total
