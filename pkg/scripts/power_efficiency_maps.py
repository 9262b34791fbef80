"""Map stationary power and efficiency over the coupling-strength plane.

For each named coupling scheme, sweeps (omega20, lambda) at the
power-maximising drive frequency and writes one CSV per scheme with the
thermodynamic summary of every working point.  This reproduces the standard
survey of the engine's operating landscape.
"""
import argparse
import csv
import pathlib

import numpy as np

import qhe3 as q


def run(scheme, gamma, ratio, beta_c, beta_h, n, out_dir):
    table = q.build_table(scheme, gamma, ratio=ratio)
    path = out_dir / f"map_{scheme}.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["omega20", "lambda", "omega_star", "power",
                         "qdot_c", "qdot_h", "eta", "eta_ssd", "domain"])
        for w20 in np.linspace(1.05, 4.95, n):
            for lam in np.linspace(0.02, 0.88, n):
                probe = q.EngineParams.from_reduced(w20, lam, 1.0, beta_c, beta_h, table)
                p = q.EngineParams.from_reduced(w20, lam, q.optimal_frequency(probe),
                                                beta_c, beta_h, table)
                rep = q.thermo_report(p)
                writer.writerow([w20, lam, p.omega, rep.power, rep.qdot_c, rep.qdot_h,
                                 rep.eta if rep.is_engine else "",
                                 rep.eta_ssd, "in" if rep.is_engine else "out"])
    print(f"{scheme}: wrote {path}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=float, default=2.0)
    ap.add_argument("--ratio", type=float, default=0.25,
                    help="cross-coupling fraction of the intermediate scheme")
    ap.add_argument("--beta-c", type=float, default=5.0)
    ap.add_argument("--beta-h", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=101, help="points per axis")
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("maps"))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for scheme in ("resonant", "intermediate", "uniform"):
        run(scheme, args.gamma, args.ratio, args.beta_c, args.beta_h,
            args.n, args.out_dir)


if __name__ == "__main__":
    main()
