"""Drive protocols g(t) on [0, tau].

A protocol is a piecewise-linear continuous part plus a comb of Dirac-delta
derivatives attached to both ends of the interval.  The ideal endpoint
values g(0) = 0 and g(tau) = 1 are kept separately from the breakpoints, so
a jump at either end is the difference between the two.

Comb terms follow the convention that delta^(n)(t) and delta^(n)(tau - t)
vanish pointwise at the endpoints but carry their full mass inside the
interval.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidProtocol, NonpositiveTau


@dataclass(frozen=True)
class SingularTerm:
    """w_start * delta^(n)(t) + w_end * delta^(n)(tau - t)."""

    derivative_order: int
    weight_at_start: float
    weight_at_end: float

    def __post_init__(self):
        if int(self.derivative_order) != self.derivative_order or self.derivative_order < 0:
            raise InvalidProtocol("derivative order must be a non-negative integer")


@dataclass(frozen=True)
class Protocol:
    tau: float
    breakpoints: tuple[tuple[float, float], ...]
    singular_terms: tuple[SingularTerm, ...] = ()
    start_value: float = 0.0
    end_value: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise NonpositiveTau(f"tau must be positive, got {self.tau}")
        bps = tuple((float(t), float(g)) for t, g in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "singular_terms", tuple(self.singular_terms))
        if len(bps) < 2:
            raise InvalidProtocol("need at least two breakpoints")
        ts = [t for t, _ in bps]
        if ts[0] != 0.0 or not math.isclose(ts[-1], self.tau, rel_tol=1e-12):
            raise InvalidProtocol("breakpoints must start at 0 and end at tau")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InvalidProtocol("breakpoint times must be strictly increasing")
        orders = [s.derivative_order for s in self.singular_terms]
        if len(set(orders)) != len(orders):
            raise InvalidProtocol("singular terms need distinct derivative orders")

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.breakpoints])

    @property
    def values(self) -> np.ndarray:
        return np.array([g for _, g in self.breakpoints])

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.values) / np.diff(self.times)

    @property
    def jump_at_start(self) -> float:
        return self.breakpoints[0][1] - self.start_value

    @property
    def jump_at_end(self) -> float:
        return self.end_value - self.breakpoints[-1][1]

    def continuous_part(self, t):
        """Value of the continuous part on [0, tau] (no comb)."""
        return np.interp(t, self.times, self.values)

    def to_dict(self) -> dict:
        d = {
            "tau": self.tau,
            "breakpoints": [[t, g] for t, g in self.breakpoints],
            "singular": [{"order": s.derivative_order, "w_start": s.weight_at_start,
                          "w_end": s.weight_at_end} for s in self.singular_terms],
        }
        if self.start_value != 0.0 or self.end_value != 1.0:
            d["endpoints"] = [self.start_value, self.end_value]
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "Protocol":
        try:
            start, end = data.get("endpoints", (0.0, 1.0))
            return cls(
                tau=float(data["tau"]),
                breakpoints=tuple(tuple(bp) for bp in data["breakpoints"]),
                singular_terms=tuple(
                    SingularTerm(int(s["order"]), float(s["w_start"]), float(s["w_end"]))
                    for s in data.get("singular", [])
                ),
                start_value=float(start),
                end_value=float(end),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidProtocol):
                raise
            raise InvalidProtocol(f"malformed protocol JSON: {exc}") from exc

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Protocol":
        return cls.from_dict(json.loads(text))


def build_ramp(tau: float) -> Protocol:
    return Protocol(tau, ((0.0, 0.0), (tau, 1.0)))


def build_quench(tau: float) -> Protocol:
    """Sudden jump to 1 at t = 0+."""
    return Protocol(tau, ((0.0, 1.0), (tau, 1.0)))


def build_universal(waiting_time: float, comb_weights: Sequence[tuple[int, float]],
                    tau: float) -> Protocol:
    """Universal optimal protocol for a given waiting time and comb.

    Continuous part (t + tau_w) / (tau + 2 tau_w); each comb weight a_n enters
    as a_n (delta^(n)(t) - delta^(n)(tau - t)) / (tau + 2 tau_w).
    """
    if not (math.isfinite(tau) and tau > 0):
        raise NonpositiveTau(f"tau must be positive, got {tau}")
    if waiting_time < 0:
        raise InvalidProtocol("waiting time must be non-negative")
    denom = tau + 2.0 * waiting_time
    terms = tuple(SingularTerm(int(n), a / denom, -a / denom) for n, a in comb_weights)
    return Protocol(
        tau,
        ((0.0, waiting_time / denom), (tau, (tau + waiting_time) / denom)),
        terms,
    )


def is_time_reversal_symmetric(p: Protocol, tol: float = 1e-12) -> bool:
    """Check g(t) = 1 - g(tau - t) on the continuous part and w_end = -w_start on the comb."""
    ts = np.concatenate([p.times, p.tau - p.times])
    g = p.continuous_part(ts)
    g_reflected = p.continuous_part(p.tau - ts)
    if np.any(np.abs(g - (1.0 - g_reflected)) > tol):
        return False
    if abs(p.start_value - (1.0 - p.end_value)) > tol:
        return False
    return all(abs(s.weight_at_end + s.weight_at_start) <= tol for s in p.singular_terms)


def fourier_of_gdot(p: Protocol, omega):
    """G(w) = integral of exp(i w t) dg(t) over [0, tau], dg taken distributionally.

    Pieces:
      * slope segment [t1, t2]:  slope (e^{i w t2} - e^{i w t1}) / (i w)
      * jump D at t0:            D e^{i w t0}
      * w delta^(n)(t):          dg gets w delta^(n+1)(t), pairing gives w (-i w)^(n+1)
      * w delta^(n)(tau - t):    equals w (-1)^n delta^(n)(t - tau), giving
                                 w (-1)^n (-i w)^(n+1) e^{i w tau}
    """
    omega = np.asarray(omega, dtype=float)
    ts, slopes = p.times, p.slopes
    e = np.exp(1j * np.multiply.outer(omega, ts))
    out = np.sum(slopes * (e[..., 1:] - e[..., :-1]), axis=-1) / (1j * omega)
    e_tau = e[..., -1]
    out = out + p.jump_at_start + p.jump_at_end * e_tau
    for s in p.singular_terms:
        n = s.derivative_order
        factor = (-1j * omega) ** (n + 1)
        out = out + factor * (s.weight_at_start + (-1) ** n * s.weight_at_end * e_tau)
    return out if out.ndim else complex(out)
