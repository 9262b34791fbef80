"""Population/coherence decomposition of the heat currents versus drive.

Scans the drive amplitude at fixed level spacing and reports how the heat
carried by stationary coherences splits between the reservoirs, including
the sign-pattern label of each working point.  Useful for locating the
boundaries between flow patterns.
"""
import argparse
import csv

import numpy as np

import qhe3 as q


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega20", type=float, default=2.5)
    ap.add_argument("--beta-c", type=float, default=5.0)
    ap.add_argument("--beta-h", type=float, default=1.0)
    ap.add_argument("--scheme", default="uniform")
    ap.add_argument("--gamma", type=float, default=2.0)
    ap.add_argument("--lam-min", type=float, default=0.02)
    ap.add_argument("--lam-max", type=float, default=0.88)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--out", default="coherent_heat.csv")
    args = ap.parse_args()

    table = q.build_table(args.scheme, args.gamma)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lambda", "omega_star", "power", "qd_h",
                         "qnd_h", "qnd_c", "eta_nd", "pattern"])
        for lam in np.linspace(args.lam_min, args.lam_max, args.n):
            probe = q.EngineParams.from_reduced(args.omega20, lam, 1.0,
                                                args.beta_c, args.beta_h, table)
            p = q.EngineParams.from_reduced(args.omega20, lam,
                                            q.optimal_frequency(probe),
                                            args.beta_c, args.beta_h, table)
            core = q.stationary_core(p)
            try:
                rep = q.decompose_heat(p, core)
            except q.BoundaryError:
                writer.writerow([lam, p.omega, core.power, "", "", "", "", "boundary"])
                continue
            writer.writerow([lam, p.omega, core.power, rep.qd_h, rep.qnd_h,
                             rep.qnd_c, rep.eta_nd, rep.pattern])
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
