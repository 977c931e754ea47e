"""Excess work of the shortcut, ramp and quench for the reference Ising chain (J=1, Gamma0=0.95).

Writes one CSV with a column per protocol; normalized work is W / (dl^2 Psi(0) / 2).

    python3 scripts/fig1_scan.py -o fig1_protocols.csv
"""
import argparse
import csv
import sys

import numpy as np

from adiashort import (DriveParams, IsingChainParams, build_quench, build_ramp,
                       build_shortcut, excess_work_spectral, make_ising_spectrum,
                       normalized_work, solve_comb)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--N", type=int, default=10)
    parser.add_argument("--gamma0", type=float, default=0.95)
    parser.add_argument("--delta-gamma", type=float, default=0.1)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("-o", "--output", default="-")
    args = parser.parse_args(argv)

    spec = make_ising_spectrum(IsingChainParams(1.0, args.gamma0, args.N, 1.0))
    drive = DriveParams(args.delta_gamma, args.gamma0)
    comb = solve_comb(spec, 1.0)
    print(f"modes {len(spec.cosine_modes)}, orders {comb.orders}, "
          f"condition {comb.condition_number:.3g}", file=sys.stderr)

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["tau", "shortcut", "ramp", "quench"])
    for tau in np.geomspace(0.1, 10, args.count):
        protocols = (build_shortcut(spec, tau, comb), build_ramp(tau), build_quench(tau))
        norms = [normalized_work(spec, excess_work_spectral(spec, p, drive), drive)
                 for p in protocols]
        writer.writerow([f"{tau:.17g}"] + [f"{x:.6e}" for x in norms])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
