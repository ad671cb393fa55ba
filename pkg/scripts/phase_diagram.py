"""Map the super-radiant phase boundary over the (g1, g2) coupling plane.

Runs the `critical` sweep through the CLI driver so the output matches
what a committed config file would produce, then renders the inverse
critical temperature as a heatmap.  Points below the transition
threshold (g1 + g2)^2 <= omega0*Omega carry the sentinel "none" and
are left blank in the plot.

    python3 scripts/phase_diagram.py --points 41 --outdir out/
"""

import argparse
import os
import sys

from dicke.cli import main as dicke_main


def run(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    records = os.path.join(args.outdir, "phase_diagram.csv")
    sweep1 = f"g1=0.0:{args.gmax}:{args.points}"
    sweep2 = f"g2=0.0:{args.gmax}:{args.points}"
    code = dicke_main(
        [
            "critical",
            "--omega0", str(args.omega0),
            "--Omega", str(args.Omega),
            "--beta", "zero-temperature",
            "--sweep", sweep1,
            "--sweep", sweep2,
            "--workers", str(args.workers),
            "--out", records,
        ]
    )
    if code != 0:
        return code
    print(f"wrote {records} ({args.points}x{args.points} grid)")
    base = os.path.join(args.outdir, "phase_diagram")
    code = dicke_main(
        [
            "plotdata",
            "--records", records,
            "--x", "g1",
            "--y", "g2",
            "--z", "beta_c_closed",
            "--out", base,
        ]
    )
    if code == 0:
        print(f"wrote {base}.dat and {base}.svg")
    return code


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--omega0", type=float, default=1.0)
    parser.add_argument("--Omega", type=float, default=1.0)
    parser.add_argument("--gmax", type=float, default=2.0, help="upper edge of both coupling axes")
    parser.add_argument("--points", type=int, default=41, help="grid points per axis")
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--outdir", default="out")
    sys.exit(run(parser.parse_args()))
