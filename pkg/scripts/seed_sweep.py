#!/usr/bin/env python
"""Fraction of noise seeds for which every point crack sits within one grid
cell of one of the strongest local maxima.

    python scripts/seed_sweep.py scenarios/three_small.json --seeds 100 --snr 10
"""
from __future__ import annotations

import argparse
from dataclasses import replace
from pathlib import Path

from crackimaging.cli import run_pipeline
from crackimaging.config import parse_config, with_overrides
from crackimaging.scene import PointCrack


def localized(result, centers) -> bool:
    g = result.grid
    peaks = [g.point(*p) for p in result.peaks(len(centers))]
    return all(any(abs(q.x - c.x) <= g.spacing + 1e-9 and abs(q.y - c.y) <= g.spacing + 1e-9
                   for q in peaks) for c in centers)


def main() -> None:
    p = argparse.ArgumentParser(description="seed sweep of point-crack localization")
    p.add_argument("config")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--snr", help="override SNR in dB")
    p.add_argument("--n", type=int, help="override the number of directions")
    args = p.parse_args()

    cfg = parse_config(Path(args.config).read_text())
    if args.snr is not None:
        cfg = with_overrides(cfg, snr_db=float(args.snr))
    if args.n is not None:
        cfg = replace(cfg, n_dirs=args.n)
    centers = [c.center for c in cfg.cracks if isinstance(c, PointCrack)]
    if len(centers) != len(cfg.cracks):
        raise SystemExit("seed sweep needs a scenario made of point cracks only")
    hits = sum(localized(run_pipeline(with_overrides(cfg, seed=s)), centers) for s in range(args.seeds))
    print(f"N={cfg.n_dirs} K={cfg.k} snr={cfg.snr_db} dB: {hits}/{args.seeds} seeds localized")


if __name__ == "__main__":
    main()
