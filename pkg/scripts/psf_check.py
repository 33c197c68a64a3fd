#!/usr/bin/env python
"""Compare the radial |E| profile of one noiseless scatterer with the
closed-form Bessel profile for a range of direction counts and frequencies.

    python scripts/psf_check.py --n 8 16 32 64 --k 1 10 50
"""
from __future__ import annotations

import argparse

import numpy as np

from crackimaging.forward import assemble_msr
from crackimaging.imaging import evaluate_map, psf_closed_form
from crackimaging.scene import ImagingGrid, PointCrack, discretize, make_directions, make_frequencies
from crackimaging.specfun import bessel_j0


def main() -> None:
    p = argparse.ArgumentParser(description="radial profile vs closed-form PSF")
    p.add_argument("--n", type=int, nargs="+", default=[8, 16, 32, 64])
    p.add_argument("--k", type=int, nargs="+", default=[1, 10, 50])
    p.add_argument("--rmax", type=float, default=1.2)
    args = p.parse_args()

    h = 0.005
    line = ImagingGrid((0.0, 0.0), h, int(round(args.rmax / h)) + 1, 1)
    cloud = discretize([PointCrack((0.0, 0.0))], 0.04)
    print(f"{'N':>4} {'K':>4} {'rel L2':>10} {'sidelobe/peak':>14}")
    for k in args.k:
        freqs = make_frequencies(0.4, 0.6, k).omegas
        psf = psf_closed_form(line.xs, freqs[0], freqs[-1]) if k > 1 else None
        for n in args.n:
            dirs = make_directions(n)
            m = evaluate_map(line, [assemble_msr(cloud, w, dirs) for w in freqs], dirs, 0.01)
            prof = m.magnitude[0] / m.magnitude[0, 0]
            if psf is None:
                ref = bessel_j0(freqs[0] * line.xs) ** 2
            else:
                ref = psf / psf[0]
            rel = np.linalg.norm(prof - ref) / np.linalg.norm(ref)
            side = next((prof[i] for i in range(1, len(prof) - 1)
                         if prof[i] >= prof[i - 1] and prof[i] >= prof[i + 1]), float("nan"))
            print(f"{n:>4} {k:>4} {rel:>10.4f} {side:>14.4f}")


if __name__ == "__main__":
    main()
