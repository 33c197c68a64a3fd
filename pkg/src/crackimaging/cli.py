"""Run a scenario end to end and export the map.

    crackimaging scenarios/three_small.json -o out/three_small --pgm

Outputs ``<base>.csv`` (|E| grid, ny rows of nx values, 17 significant
digits), ``<base>.json`` (metadata sidecar) and optionally ``<base>.pgm``.
Exit status: 0 success, 1 config error, 2 numeric failure, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, ScenarioConfig, crack_to_dict, grid_to_dict, parse_config, to_dict, with_overrides
from .forward import NoiseSpec, add_noise, assemble_msr
from .imaging import ImagingMap, evaluate_map
from .scene import discretize, make_directions, make_frequencies

log = logging.getLogger(__name__)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


def run_pipeline(cfg: ScenarioConfig, output: str | Path | None = None,
                 pgm: bool = False) -> ImagingMap:
    """Cracks -> point cloud -> MSR per frequency -> noise -> map.

    Deterministic given ``cfg.seed``; frequency ``k`` draws its noise from
    stream ``k`` of that seed. Writes the exports when ``output`` is given.
    """
    cloud = discretize(cfg.cracks, cfg.discretization_spacing)
    dirs = make_directions(cfg.n_dirs)
    freqs = make_frequencies(cfg.lambda_min, cfg.lambda_max, cfg.k)
    noise = NoiseSpec(cfg.snr_db, cfg.seed)
    matrices = [add_noise(assemble_msr(cloud, w, dirs, cfg.convention), noise, stream=k)
                for k, w in enumerate(freqs.omegas)]
    log.info("assembled %d MSR matrices (N=%d, %d scatterers)", len(matrices), dirs.n, len(cloud))
    result = evaluate_map(cfg.grid, matrices, dirs, cfg.tau)
    result = replace(result, metadata={
        "N": cfg.n_dirs,
        "K": cfg.k,
        "omegas": [float(w) for w in result.omegas],
        "ranks": list(result.ranks),
        "seed": cfg.seed,
        "snrDb": "inf" if cfg.snr_db == math.inf else cfg.snr_db,
        "convention": cfg.convention,
        "gridSpec": grid_to_dict(cfg.grid),
        "cracks": [crack_to_dict(c) for c in cfg.cracks],
        "config": to_dict(cfg),
    })
    if output is not None:
        export_map(result, output, pgm=pgm)
    return result


def to_pgm(mag: np.ndarray) -> np.ndarray:
    """Linear map of magnitudes onto 0..255 (floor), scaled by the maximum."""
    mag = np.asarray(mag, dtype=float)
    top = mag.max() if mag.size else 0.0
    if top <= 0:
        return np.zeros(mag.shape, dtype=int)
    return np.clip(np.floor(255.0 * mag / top), 0, 255).astype(int)


def export_map(result: ImagingMap, base: str | Path, pgm: bool = True) -> dict[str, Path]:
    base = Path(base)
    paths = {"csv": base.with_suffix(".csv"), "meta": base.with_suffix(".json")}
    if pgm:
        paths["pgm"] = base.with_suffix(".pgm")
    try:
        base.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(paths["csv"], result.magnitude, fmt="%.17g", delimiter=",")
        meta = dict(result.metadata) or {
            "N": result.n_dirs,
            "K": result.k,
            "omegas": [float(w) for w in result.omegas],
            "ranks": list(result.ranks),
            "gridSpec": grid_to_dict(result.grid),
        }
        paths["meta"].write_text(json.dumps(meta, indent=2) + "\n")
        if pgm:
            pix = to_pgm(result.magnitude)
            ny, nx = pix.shape
            lines = ["P2", f"{nx} {ny}", "255"] + [" ".join(map(str, row)) for row in pix]
            paths["pgm"].write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write map export at {exc.filename or base}: {exc.strerror or exc}") from exc
    return paths


def read_csv(path: str | Path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crackimaging",
                                description="Multi-frequency SVD imaging of cracks from synthetic MSR data")
    p.add_argument("config", help="scenario JSON file")
    p.add_argument("-o", "--output", help="output base path (default: config file stem)")
    p.add_argument("--seed", type=int, help="override the noise seed")
    p.add_argument("--snr", help='override the SNR in dB, or "inf" for noiseless data')
    p.add_argument("--resolution", type=int, help="grid samples along the longer side")
    p.add_argument("--pgm", action="store_true", help="also write a grayscale PGM image")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config {args.config}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = parse_config(text)
        snr = None
        if args.snr is not None:
            snr = args.snr if args.snr.strip().lower() in ("inf", "+inf") else float(args.snr)
        cfg = with_overrides(cfg, seed=args.seed, snr_db=snr, resolution=args.resolution)
    except (ConfigError, ValueError) as exc:
        print(f"config error in {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    base = Path(args.output) if args.output else Path(Path(args.config).stem)
    try:
        result = run_pipeline(cfg, base, pgm=args.pgm)
    except (np.linalg.LinAlgError, FloatingPointError, ValueError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    j, i = result.argmax()
    peak = result.grid.point(j, i)
    print(f"wrote {base.with_suffix('.csv')}; ranks {list(result.ranks)}; "
          f"peak |E|={result.magnitude[j, i]:.6g} at ({peak.x:.4f}, {peak.y:.4f})")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
