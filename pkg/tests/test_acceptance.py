"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import time

import numpy as np
import pytest

from adiashort.protocol import build_quench, build_ramp, is_time_reversal_symmetric
from adiashort.relaxation import RelaxationSpectrum, make_ising_spectrum
from adiashort.series import is_shortcut_candidate, laurent_coefficients, waiting_time
from adiashort.shortcut import build_shortcut, solve_comb, verify_shortcut
from adiashort.work import (DriveParams, euler_lagrange_residual, excess_work_extrapolated,
                            excess_work_spectral, normalized_work)

from .conftest import FIG1, FIG1_DELTA_GAMMA, random_cosine_spectrum, random_protocol

FIG1_DRIVE = DriveParams(FIG1_DELTA_GAMMA, FIG1.field_Gamma0)


def report(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    assert ok, detail


def test_1_fig1_reproduction(capsys):
    start = time.perf_counter()
    spec = make_ising_spectrum(FIG1)
    taus = np.geomspace(0.1, 10, 50)
    worst = 0.0
    for tau in taus:
        res = excess_work_spectral(spec, build_shortcut(spec, tau), FIG1_DRIVE)
        worst = max(worst, abs(normalized_work(spec, res, FIG1_DRIVE)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 10
    report(capsys, 1, "Ising N=10 shortcut over 50 log-spaced tau", ok,
           f"max normalized work {worst:.2e} (<= 1e-10), {elapsed:.2f} s (< 10 s)")


def test_2_single_mode_closed_form(capsys):
    worst_w, worst_work = 0.0, 0.0
    drive = DriveParams(FIG1_DELTA_GAMMA)
    for omega in (0.5, 1.0, 7.0):
        spec = RelaxationSpectrum.cosine([1.0], [omega])
        for tau in (0.01, 1.0, 100.0):
            sol = solve_comb(spec, tau)
            expected = 1 / (tau * omega**2)
            worst_w = max(worst_w, abs(sol.weights[0] - expected) / expected)
            work = excess_work_spectral(spec, build_shortcut(spec, tau), drive).excess_work
            worst_work = max(worst_work, abs(work) / (drive.delta_lambda**2 * spec.psi0))
    ok = worst_w <= 1e-12 and worst_work <= 1e-12
    report(capsys, 2, "single-mode weight and zero work", ok,
           f"weight rel err {worst_w:.1e}, work/(dl^2 Psi0) {worst_work:.1e} (both <= 1e-12)")


def test_3_coefficient_pattern(capsys):
    rng = np.random.default_rng(2024)
    failures = []
    for i in range(25):
        spec = random_cosine_spectrum(rng, max_modes=6)
        c = laurent_coefficients(spec)
        if not (c.a_minus2 == -1.0 and c.a_minus1 == 0.0):
            failures.append(f"random spectrum {i}")
    for omega in (0.5, 1.0, 2.0, 7.0):
        c = laurent_coefficients(RelaxationSpectrum.cosine([1.0], [omega]))
        if abs(abs(c.a_regular[0]) * omega**2 - 1) > 1e-14:
            failures.append(f"single mode omega={omega}")
    ising = laurent_coefficients(make_ising_spectrum(FIG1))
    if any(a != 0 for a in ising.a_regular[1::2]):
        failures.append("Ising odd coefficients")
    report(capsys, 3, "Laurent coefficient pattern", not failures,
           "25 random spectra, 4 single modes, Ising N=10" + (f"; failed: {failures}" if failures else ""))


def test_4_waiting_time(capsys):
    rng = np.random.default_rng(5)
    failures = []
    for _ in range(10):
        if waiting_time(random_cosine_spectrum(rng, max_modes=6)) != 0.0:
            failures.append("cosine waiting time not 0")
    for tau_r in (0.1, 1.0, 3.5, 40.0):
        spec = RelaxationSpectrum.exponential([rng.uniform(0.1, 2)], [tau_r])
        if abs(waiting_time(spec) - tau_r) > 1e-12 * tau_r:
            failures.append(f"tau_R={tau_r}")
        c = laurent_coefficients(spec)
        for tol in (1e-12, 1e-3, 0.5 * tau_r):
            if is_shortcut_candidate(c, tol):
                failures.append(f"verdict true for tau_w={tau_r}, tol={tol}")
    report(capsys, 4, "waiting time and shortcut verdict", not failures,
           "10 cosine, 4 exponential spectra" + (f"; failed: {failures}" if failures else ""))


@pytest.mark.slow
def test_5_oracle_equivalence(capsys):
    rng = np.random.default_rng(99)
    start = time.perf_counter()
    drive = DriveParams(0.1)
    worst, max_order = 0.0, 0
    for _ in range(50):
        spec = random_cosine_spectrum(rng)
        tau = rng.uniform(0.5, 5.0)
        p = random_protocol(rng, tau, max_order=4, omega_max=spec.frequencies.max())
        max_order = max([max_order] + [t.derivative_order for t in p.singular_terms])
        s = excess_work_spectral(spec, p, drive).excess_work
        q = excess_work_extrapolated(spec, p, drive).excess_work
        worst = max(worst, abs(q - s) / abs(s))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-4 and elapsed < 300 and max_order == 4
    report(capsys, 5, "quadrature oracle vs spectral on 50 cases", ok,
           f"max rel diff {worst:.1e} (<= 1e-4), comb orders up to {max_order}, "
           f"{elapsed:.1f} s (< 300 s)")


def test_6_euler_lagrange_certificate(capsys):
    spec = make_ising_spectrum(FIG1)
    worst = 0.0
    for tau in (0.1, 1.0, 10.0):
        t = np.linspace(0, tau, 102)[1:-1]
        res = euler_lagrange_residual(spec, build_shortcut(spec, tau), t)
        worst = max(worst, float(np.abs(res).max()))
    report(capsys, 6, "Ising EL residual at 100 interior times", worst <= 1e-8,
           f"max |residual| {worst:.1e} (<= 1e-8) for tau in (0.1, 1, 10)")


def test_7_variational_dominance(capsys):
    rng = np.random.default_rng(17)
    spectra = [make_ising_spectrum(FIG1), RelaxationSpectrum.cosine([1.0], [2.0]),
               RelaxationSpectrum.cosine([0.4, 0.3, 0.3], [0.7, 1.9, 4.2])]
    drive = DriveParams(0.1)
    violations, margin = 0, np.inf
    for spec in spectra:
        tau = rng.uniform(0.5, 5.0)
        best = excess_work_spectral(spec, build_shortcut(spec, tau), drive).excess_work
        for _ in range(20):
            p = random_protocol(rng, tau, omega_max=spec.frequencies.max(), symmetric=True)
            assert is_time_reversal_symmetric(p, tol=1e-9)
            other = excess_work_spectral(spec, p, drive).excess_work
            violations += best > other
            margin = min(margin, other - best)
        for p in (build_ramp(tau), build_quench(tau)):
            other = excess_work_spectral(spec, p, drive).excess_work
            violations += best > other
    report(capsys, 7, "shortcut dominates 20 symmetric protocols x 3 spectra",
           violations == 0, f"{violations} violations, smallest gap {margin:.2e}")


def test_8_scaling_laws(capsys):
    rng = np.random.default_rng(8)
    failures = []
    for i in range(10):
        spec = random_cosine_spectrum(rng, max_modes=5)
        tau, k = rng.uniform(0.1, 10.0), float(rng.choice([2.0, 4.0, 0.5, 8.0]))
        a, b = solve_comb(spec, tau), solve_comb(spec, k * tau)
        if not np.allclose(np.array(b.weights) * k, a.weights, rtol=4e-16, atol=0):
            failures.append(f"weights case {i}")
        p = random_protocol(rng, tau, omega_max=spec.frequencies.max())
        dl = rng.uniform(0.01, 1.0)
        w1 = excess_work_spectral(spec, p, DriveParams(dl)).excess_work
        w2 = excess_work_spectral(spec, p, DriveParams(2 * dl)).excess_work
        if w2 != 4 * w1:
            failures.append(f"work case {i}")
    report(capsys, 8, "1/tau weight and delta_lambda^2 work scaling", not failures,
           "10 random cases" + (f"; failed: {failures}" if failures else ""))
