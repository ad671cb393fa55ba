"""Trace the partition-function pole structure as temperature drops.

Sweeps the inverse temperature from the high-temperature side toward
the transition and records the two zero-frequency factors
1 - a(0) -+ 2c(0), the Gaussian-weight prefactor I0, and ln(Z/Z0).
The factor 1 - a(0) - 2c(0) crosses zero exactly at the inverse
critical temperature, where I0 diverges; both routes to that location
are printed side by side.  Output is a whitespace table readable by
gnuplot.

    python3 scripts/pole_structure.py --g1 0.4 --g2 0.9 --out out/poles.dat
"""

import argparse
import os
import sys

import numpy as np

from dicke.meanfield import (
    PoleError,
    coeff_a,
    coeff_c,
    coeff_dd,
    critical_beta_closed,
    i0_divergence_beta,
    log_partition_ratio,
)
from dicke.params import ModelParams


def run(args) -> int:
    p = ModelParams(
        omega0=args.omega0, Omega=args.Omega, g1=args.g1, g2=args.g2,
        lam=args.lam, n_atoms=1, beta=None,
    )
    closed = critical_beta_closed(p)
    if closed.is_finite:
        beta_c = closed.beta_c
        divergence = i0_divergence_beta(p)
        print(f"closed-form beta_c    = {beta_c:.12f}")
        print(f"I0 divergence located = {divergence:.12f}")
        print(f"difference            = {abs(divergence - beta_c):.3e}")
        beta_hi = args.beta_max if args.beta_max is not None else 0.999 * beta_c
    else:
        print(f"no transition: beta_c = {closed.beta_c}; sweeping the normal phase only")
        beta_hi = args.beta_max if args.beta_max is not None else 8.0 / args.Omega

    betas = np.linspace(beta_hi / args.points, beta_hi, args.points)
    rows = []
    for beta in betas:
        a0 = coeff_a(p, 0.0, beta=float(beta)).value.real
        c0 = coeff_c(p, 0.0, beta=float(beta)).value.real
        try:
            i0 = coeff_dd(p, 0.0, beta=float(beta)).I0.value
            log_ratio = log_partition_ratio(p, beta=float(beta))
        except PoleError:
            break
        rows.append((float(beta), 1.0 - a0 - 2.0 * c0, 1.0 - a0 + 2.0 * c0, i0, log_ratio))

    if args.out:
        os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("# beta gap_minus gap_plus I0 log_partition_ratio\n")
            for row in rows:
                fh.write(" ".join(format(v, ".17g") for v in row) + "\n")
        print(f"wrote {args.out} ({len(rows)} rows)")
    else:
        print(f"{'beta':>10} {'1-a-2c':>12} {'1-a+2c':>12} {'I0':>14} {'ln(Z/Z0)':>12}")
        for beta, gap_m, gap_p, i0, lr in rows[:: max(1, len(rows) // 20)]:
            print(f"{beta:>10.4f} {gap_m:>12.6f} {gap_p:>12.6f} {i0:>14.4f} {lr:>12.6f}")
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--omega0", type=float, default=1.0)
    parser.add_argument("--Omega", type=float, default=1.0)
    parser.add_argument("--g1", type=float, default=0.4)
    parser.add_argument("--g2", type=float, default=0.9)
    parser.add_argument("--lam", type=float, default=0.0)
    parser.add_argument("--beta-max", type=float, default=None,
                        help="sweep end (default: just below beta_c)")
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--out", default=None, help="write a gnuplot table here instead of stdout")
    sys.exit(run(parser.parse_args()))
