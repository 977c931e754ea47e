import numpy as np
import pytest
from hypothesis import strategies as st

from adiashort.protocol import Protocol, SingularTerm
from adiashort.relaxation import IsingChainParams, RelaxationSpectrum, make_ising_spectrum

FIG1 = IsingChainParams(coupling_J=1.0, field_Gamma0=0.95, spin_count_N=10, hbar=1.0)
FIG1_DELTA_GAMMA = 0.1


@pytest.fixture
def fig1_spectrum():
    return make_ising_spectrum(FIG1)


@st.composite
def cosine_spectra(draw, max_modes=4, min_omega=0.3, max_omega=5.0):
    k = draw(st.integers(1, max_modes))
    omegas = draw(st.lists(st.floats(min_omega, max_omega), min_size=k, max_size=k,
                           unique=True))
    omegas = sorted(omegas)
    if any(b - a < 1e-3 * b for a, b in zip(omegas, omegas[1:])):
        omegas = [min_omega + (max_omega - min_omega) * (i + 1) / (k + 1) for i in range(k)]
    amps = draw(st.lists(st.floats(0.05, 2.0), min_size=k, max_size=k))
    return RelaxationSpectrum.cosine(amps, omegas)


def random_cosine_spectrum(rng, max_modes=4, omega_range=(0.3, 5.0)):
    k = int(rng.integers(1, max_modes + 1))
    while True:
        omegas = np.sort(rng.uniform(*omega_range, size=k))
        if k == 1 or np.min(np.diff(omegas)) > 0.05:
            break
    return RelaxationSpectrum.cosine(rng.uniform(0.1, 1.0, size=k), omegas)


def random_protocol(rng, tau, max_terms=3, max_order=2, omega_max=1.0, symmetric=False):
    """Piecewise-linear part with endpoint jumps plus a random comb.

    Comb weights are scaled by 1/omega_max^(n+1) so every term contributes
    an O(1) amount to G(omega).
    """
    n_inner = int(rng.integers(0, 3))
    if symmetric:
        half = np.sort(rng.uniform(0, tau / 2, size=n_inner))
        g_half = rng.uniform(-0.5, 1.5, size=n_inner)
        g0 = rng.uniform(-0.3, 0.5)
        ts = [0.0, *half, tau / 2, *(tau - half[::-1]), tau]
        gs = [g0, *g_half, 0.5, *(1 - g_half[::-1]), 1 - g0]
        bps = tuple(zip(ts, gs))
        # drop exact duplicates that can appear when half hits tau/2
        clean = [bps[0]]
        for t, g in bps[1:]:
            if t > clean[-1][0] + 1e-9:
                clean.append((t, g))
        clean[-1] = (tau, clean[-1][1])
        bps = tuple(clean)
    else:
        inner = np.sort(rng.uniform(0.05 * tau, 0.95 * tau, size=n_inner))
        ts = [0.0, *inner, tau]
        gs = rng.uniform(-0.5, 1.5, size=len(ts))
        bps = tuple(zip(ts, gs))
    n_terms = int(rng.integers(0, max_terms + 1))
    orders = rng.choice(np.arange(max_order + 1), size=min(n_terms, max_order + 1), replace=False)
    terms = []
    for n in orders:
        scale = 1.0 / omega_max ** (int(n) + 1)
        ws = rng.uniform(-1, 1) * scale
        we = -ws if symmetric else rng.uniform(-1, 1) * scale
        terms.append(SingularTerm(int(n), ws, we))
    return Protocol(tau, bps, tuple(terms))
