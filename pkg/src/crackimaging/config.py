"""Scenario configuration: a single JSON document.

Schema (keys not listed are rejected)::

    {
      "cracks": [                                   # required, nonempty
        {"type": "point",   "center": [x, y], "rho": 0.05},
        {"type": "segment", "start": [x, y], "end": [x, y]},
        {"type": "arc",     "center": [x, y], "radius": r,
                            "angle_start": a0, "angle_end": a1}
      ],
      "N": 12,                                      # required, even >= 2
      "K": 10,                                      # required, >= 1
      "lambda_min": 0.4, "lambda_max": 0.6,
      "snr_db": 20 | "inf",
      "seed": 0,
      "grid": {"origin": [x0, y0], "spacing": h, "nx": 101, "ny": 101},
      "tau": 0.1,
      "convention": "symmetric" | "paper",
      "discretization_spacing": 0.04
    }

``rho`` defaults to 0.05 per crack. Defaults for the optional top-level keys
are listed in ``DEFAULTS``; ``tau`` defaults to 0.1 with noise and 0.01
without, ``discretization_spacing`` to ``lambda_min / 10`` and the grid to
101 x 101 samples at spacing 0.02 centred on the origin.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .forward import CONVENTIONS
from .scene import ArcCrack, Crack, ImagingGrid, PointCrack, SegmentCrack

DEFAULTS = {
    "lambda_min": 0.4,
    "lambda_max": 0.6,
    "snr_db": math.inf,
    "seed": 0,
    "convention": "symmetric",
}
DEFAULT_RHO = 0.05
_TOP_KEYS = {"cracks", "N", "K", "lambda_min", "lambda_max", "snr_db", "seed", "grid",
             "tau", "convention", "discretization_spacing"}
_CRACK_KEYS = {
    "point": {"center"},
    "segment": {"start", "end"},
    "arc": {"center", "radius", "angle_start", "angle_end"},
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    cracks: tuple[Crack, ...]
    n_dirs: int
    k: int
    lambda_min: float = 0.4
    lambda_max: float = 0.6
    snr_db: float = math.inf
    seed: int = 0
    grid: ImagingGrid = ImagingGrid.centered()
    tau: float = 0.01
    convention: str = "symmetric"
    discretization_spacing: float = 0.04

    @property
    def noisy(self) -> bool:
        return self.snr_db != math.inf


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{where}: must be finite")
    return float(value)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return value


def _pair(value, where: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise ConfigError(f"{where}: expected [x, y], got {value!r}")
    return (_number(value[0], f"{where}[0]"), _number(value[1], f"{where}[1]"))


def _snr(value, where: str = "snr_db") -> float:
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "+inf", "infinity"):
            return math.inf
        raise ConfigError(f"{where}: expected a number or \"inf\", got {value!r}")
    if value == math.inf:
        return math.inf
    return _number(value, where)


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(extra)}")


def _crack(obj, where: str) -> Crack:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    kind = obj.get("type")
    if kind not in _CRACK_KEYS:
        raise ConfigError(f"{where}.type: expected one of {sorted(_CRACK_KEYS)}, got {kind!r}")
    keys = _CRACK_KEYS[kind]
    _reject_unknown(obj, keys | {"type", "rho"}, where)
    missing = sorted(keys - set(obj))
    if missing:
        raise ConfigError(f"{where}: missing key(s) {', '.join(missing)}")
    rho = _number(obj.get("rho", DEFAULT_RHO), f"{where}.rho")
    try:
        if kind == "point":
            return PointCrack(_pair(obj["center"], f"{where}.center"), rho)
        if kind == "segment":
            return SegmentCrack(_pair(obj["start"], f"{where}.start"),
                                _pair(obj["end"], f"{where}.end"), rho)
        return ArcCrack(_pair(obj["center"], f"{where}.center"),
                        _number(obj["radius"], f"{where}.radius"),
                        _number(obj["angle_start"], f"{where}.angle_start"),
                        _number(obj["angle_end"], f"{where}.angle_end"), rho)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _grid(obj) -> ImagingGrid:
    if not isinstance(obj, dict):
        raise ConfigError("grid: expected an object")
    keys = {"origin", "spacing", "nx", "ny"}
    _reject_unknown(obj, keys, "grid")
    missing = sorted(keys - set(obj))
    if missing:
        raise ConfigError(f"grid: missing key(s) {', '.join(missing)}")
    try:
        return ImagingGrid(_pair(obj["origin"], "grid.origin"),
                           _number(obj["spacing"], "grid.spacing"),
                           _integer(obj["nx"], "grid.nx"), _integer(obj["ny"], "grid.ny"))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"grid: {exc}") from None


def from_dict(doc: dict) -> ScenarioConfig:
    if not isinstance(doc, dict):
        raise ConfigError("top level: expected a JSON object")
    _reject_unknown(doc, _TOP_KEYS, "top level")
    for key in ("cracks", "N", "K"):
        if key not in doc:
            raise ConfigError(f"{key}: required key missing")
    if not isinstance(doc["cracks"], list) or not doc["cracks"]:
        raise ConfigError("cracks: expected a nonempty list")
    cracks = tuple(_crack(c, f"cracks[{i}]") for i, c in enumerate(doc["cracks"]))
    if len({c.rho for c in cracks}) > 1:
        raise ConfigError("cracks: all cracks must share one half-length rho")

    n = _integer(doc["N"], "N")
    if n < 2 or n % 2:
        raise ConfigError(f"N: number of directions must be even and >= 2, got {n}")
    k = _integer(doc["K"], "K")
    if k < 1:
        raise ConfigError(f"K: need K >= 1, got {k}")
    lmin = _number(doc.get("lambda_min", DEFAULTS["lambda_min"]), "lambda_min")
    lmax = _number(doc.get("lambda_max", DEFAULTS["lambda_max"]), "lambda_max")
    if not 0 < lmin < lmax:
        raise ConfigError(f"lambda_min, lambda_max: need 0 < lambda_min < lambda_max, got {lmin}, {lmax}")
    snr = _snr(doc.get("snr_db", DEFAULTS["snr_db"]))
    seed = _integer(doc.get("seed", DEFAULTS["seed"]), "seed")
    if not 0 <= seed < 2**64:
        raise ConfigError("seed: must be a nonnegative 64-bit integer")
    grid = _grid(doc["grid"]) if "grid" in doc else ImagingGrid.centered()
    tau = _number(doc.get("tau", 0.1 if snr != math.inf else 0.01), "tau")
    if not 0 < tau < 1:
        raise ConfigError(f"tau: must lie in (0, 1), got {tau}")
    conv = doc.get("convention", DEFAULTS["convention"])
    if conv not in CONVENTIONS:
        raise ConfigError(f"convention: expected one of {list(CONVENTIONS)}, got {conv!r}")
    spacing = _number(doc.get("discretization_spacing", lmin / 10.0), "discretization_spacing")
    if spacing <= 0:
        raise ConfigError("discretization_spacing: must be positive")
    return ScenarioConfig(cracks, n, k, lmin, lmax, snr, seed, grid, tau, conv, spacing)


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a JSON scenario document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def crack_to_dict(c: Crack) -> dict:
    if isinstance(c, PointCrack):
        return {"type": "point", "center": list(c.center), "rho": c.rho}
    if isinstance(c, SegmentCrack):
        return {"type": "segment", "start": list(c.start), "end": list(c.end), "rho": c.rho}
    return {"type": "arc", "center": list(c.center), "radius": c.radius,
            "angle_start": c.angle_start, "angle_end": c.angle_end, "rho": c.rho}


def grid_to_dict(g: ImagingGrid) -> dict:
    return {"origin": list(g.origin), "spacing": g.spacing, "nx": g.nx, "ny": g.ny}


def to_dict(cfg: ScenarioConfig) -> dict:
    return {
        "cracks": [crack_to_dict(c) for c in cfg.cracks],
        "N": cfg.n_dirs,
        "K": cfg.k,
        "lambda_min": cfg.lambda_min,
        "lambda_max": cfg.lambda_max,
        "snr_db": "inf" if cfg.snr_db == math.inf else cfg.snr_db,
        "seed": cfg.seed,
        "grid": grid_to_dict(cfg.grid),
        "tau": cfg.tau,
        "convention": cfg.convention,
        "discretization_spacing": cfg.discretization_spacing,
    }


def render_config(cfg: ScenarioConfig) -> str:
    return json.dumps(to_dict(cfg), indent=2) + "\n"


def with_overrides(cfg: ScenarioConfig, seed: int | None = None, snr_db=None,
                   resolution: int | None = None) -> ScenarioConfig:
    """Apply command-line overrides.

    ``resolution`` resamples the grid to that many points along its longer
    side, keeping its centre and extent.
    """
    doc = to_dict(cfg)
    if seed is not None:
        doc["seed"] = seed
    if snr_db is not None:
        doc["snr_db"] = snr_db
        # retune the rank threshold only when it was never set explicitly
        if cfg.tau == (0.1 if cfg.noisy else 0.01):
            doc.pop("tau")
    if resolution is not None:
        if resolution < 2:
            raise ConfigError("resolution: need at least 2 samples")
        g = cfg.grid
        extent = g.spacing * (max(g.nx, g.ny) - 1)
        h = extent / (resolution - 1) if extent > 0 else g.spacing
        nx = int(round(g.spacing * (g.nx - 1) / h)) + 1
        ny = int(round(g.spacing * (g.ny - 1) / h)) + 1
        cx = g.origin.x + g.spacing * (g.nx - 1) / 2
        cy = g.origin.y + g.spacing * (g.ny - 1) / 2
        doc["grid"] = grid_to_dict(ImagingGrid((cx - h * (nx - 1) / 2, cy - h * (ny - 1) / 2), h, nx, ny))
    return from_dict(doc)

