#!/usr/bin/env python3
"""Regenerate every figure dataset (CSV traces + JSON manifests).

Usage:
    python3 scripts/reproduce_figures.py [outdir] [--only NAME] [--tight FACTOR]

Writes, per figure name, one CSV per trace plus a run manifest:

  gamma_mirrors  decay rate vs zeta above both ideal mirrors
  omega_mirrors  resonant + nonresonant shifts vs zeta, both mirrors
  loglog_nres    |nonresonant shift| on a log grid with the z^-3 / z^-4 /
                 z^-5 asymptote lines
  gamma_ti       rate above the axion-coupled surface: pure-axion response
                 at theta = +/- pi and the eps = 16 with/without difference
  omega_ti       the same traces for the resonant shift

The omega_ti set dominates the runtime (a few seconds: every grid point
runs the rotated-contour quadrature for two media).
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from cpshift.quadrature import QuadratureConfig
from cpshift.scan import FIGURE_NAMES, figure


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", nargs="?", default="figures", type=Path)
    ap.add_argument("--only", choices=FIGURE_NAMES, default=None,
                    help="regenerate a single figure dataset")
    ap.add_argument("--tight", type=float, default=None, metavar="FACTOR",
                    help="multiply quadrature tolerances by FACTOR (e.g. 0.1)")
    args = ap.parse_args()

    qcfg = QuadratureConfig().tighter(args.tight) if args.tight else None
    names = [args.only] if args.only else list(FIGURE_NAMES)
    args.outdir.mkdir(parents=True, exist_ok=True)

    for name in names:
        t0 = time.perf_counter()
        outputs = figure(name, args.outdir, qcfg=qcfg)
        dt = time.perf_counter() - t0
        print(f"{name:14s} {dt:6.1f} s  {len(outputs)} files")
        for fn in outputs:
            print(f"    {args.outdir / fn}")


if __name__ == "__main__":
    main()
