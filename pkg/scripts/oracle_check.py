"""Compare the spectral excess work with the mollified-quadrature oracle.

    python3 scripts/oracle_check.py --cases 50 --max-order 4
"""
import argparse
import time

import numpy as np

from adiashort import (DriveParams, Protocol, RelaxationSpectrum, SingularTerm,
                       excess_work_extrapolated, excess_work_spectral)


def random_case(rng, max_order):
    k = int(rng.integers(1, 5))
    omegas = np.sort(rng.uniform(0.3, 5.0, size=k))
    while k > 1 and np.min(np.diff(omegas)) < 0.05:
        omegas = np.sort(rng.uniform(0.3, 5.0, size=k))
    spec = RelaxationSpectrum.cosine(rng.uniform(0.1, 1.0, size=k), omegas)
    tau = rng.uniform(0.5, 5.0)
    inner = np.sort(rng.uniform(0.05 * tau, 0.95 * tau, size=int(rng.integers(0, 3))))
    ts = [0.0, *inner, tau]
    bps = tuple(zip(ts, rng.uniform(-0.5, 1.5, size=len(ts))))
    orders = rng.choice(max_order + 1, size=min(3, max_order + 1), replace=False)
    scale = omegas[-1]
    terms = tuple(SingularTerm(int(n), *(rng.uniform(-1, 1, size=2) / scale ** (n + 1)))
                  for n in orders)
    return spec, Protocol(tau, bps, terms)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--cases", type=int, default=50)
    parser.add_argument("--max-order", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    drive = DriveParams(1.0)
    worst = 0.0
    start = time.perf_counter()
    for i in range(args.cases):
        spec, p = random_case(rng, args.max_order)
        s = excess_work_spectral(spec, p, drive).excess_work
        q = excess_work_extrapolated(spec, p, drive).excess_work
        rel = abs(q - s) / abs(s)
        worst = max(worst, rel)
        print(f"{i:3d} modes={len(spec.cosine_modes)} tau={p.tau:.3f} "
              f"spectral={s:.10e} quadrature={q:.10e} rel={rel:.1e}")
    print(f"worst relative difference {worst:.2e} in {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
