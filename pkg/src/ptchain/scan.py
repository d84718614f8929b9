"""Grid, random and ray campaigns over the coupling space, with ordered output."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction

import numpy as np

from .chain_model import CouplingVector, check_dimension
from .criteria import DEFAULT_EPSILON, dispatch
from .errors import NoBoundaryFound
from .geometry import boundary_bisect, eep_squares, root_gap_diagnostic
from .oracle import oracle_verdict

MODES = ("criteria", "oracle", "both")
FORMATS = ("csv", "json")
BOX_FACTOR = Fraction(6, 5)


class ConfigError(ValueError):
    pass


@dataclass
class ScanConfig:
    """Everything a campaign needs; mirrors the JSON config file key for key.

    ``grid`` holds one ``(min, max, steps)`` triple per coupling.  ``samples``
    switches to uniform random rational points in the box
    ``g_k^2 <= 1.2 (N - k) k``; ``rays`` is either a ray count or an explicit
    list of directions for boundary campaigns.
    """

    N: int = 2
    grid: list = field(default_factory=list)
    samples: int = 0
    rays: object = None
    mode: str = "criteria"
    epsilon: float = DEFAULT_EPSILON
    tol: float = 1e-12
    output: str | None = None
    format: str = "csv"
    seed: int = 0
    threads: int = 1
    spectrum: bool = True

    @classmethod
    def from_dict(cls, data: dict) -> "ScanConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self) -> "ScanConfig":
        try:
            check_dimension(self.N)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        J = self.N // 2
        if self.grid:
            if len(self.grid) != J:
                raise ConfigError(f"grid needs {J} (min, max, steps) triples for N={self.N}")
            for lo, hi, steps in self.grid:
                if int(steps) != steps or steps < 1:
                    raise ConfigError(f"steps must be a positive integer, got {steps}")
                if not lo <= hi:
                    raise ConfigError(f"grid range min {lo} exceeds max {hi}")
        if not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.samples < 0 or self.threads < 1:
            raise ConfigError("samples must be >= 0 and threads >= 1")
        return self


# --- point evaluation -------------------------------------------------------------


def record_fields(J: int) -> list[str]:
    return (
        ["index"]
        + [f"g_{k}" for k in range(1, J + 1)]
        + ["verdict", "margin", "witness", "oracle_verdict", "mismatch", "min_root_gap", "min_root"]
    )


def evaluate_point(index, c: CouplingVector, mode="criteria", epsilon=DEFAULT_EPSILON, spectrum=True) -> dict:
    rec = {"index": index}
    for k, g in enumerate(c.g, start=1):
        rec[f"g_{k}"] = float(g)
    oracle = None
    if mode in ("oracle", "both"):
        oracle = oracle_verdict(c)
    if mode == "oracle":
        main = oracle
    else:
        main = dispatch(c, epsilon)
    rec["verdict"] = str(main.state)
    rec["margin"] = float(main.margin)
    rec["witness"] = main.witness
    rec["oracle_verdict"] = str(oracle.state) if mode == "both" else ""
    if mode == "both":
        rec["mismatch"] = abs(main.margin) > epsilon and main.state != oracle.state
    else:
        rec["mismatch"] = ""
    if spectrum:
        gap, smallest, _ = root_gap_diagnostic(c)
        rec["min_root_gap"], rec["min_root"] = gap, smallest
    else:
        rec["min_root_gap"] = rec["min_root"] = ""
    return rec


def _evaluate_chunk(args):
    N, items, mode, epsilon, spectrum = args
    out = []
    for index, item in items:
        kind, values = item
        c = CouplingVector.from_squares(N, values) if kind == "sq" else CouplingVector(N, values)
        out.append(evaluate_point(index, c, mode, epsilon, spectrum))
    return out


def _chunks(items, n):
    """Static partition into ``n`` contiguous blocks."""
    size = math.ceil(len(items) / n) if items else 0
    return [items[i : i + size] for i in range(0, len(items), size)] if size else []


def _run_chunks(fn, tasks, threads):
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


# --- point generators ---------------------------------------------------------------


def grid_points(cfg: ScanConfig) -> list:
    axes = [np.linspace(lo, hi, int(steps)) if steps > 1 else np.array([lo]) for lo, hi, steps in cfg.grid]
    return [("g", tuple(float(x) for x in p)) for p in itertools.product(*axes)]


def random_points(N: int, count: int, seed: int, denominator: int = 10**6) -> list:
    """Uniform rational ``g_k^2`` in ``[0, 1.2 (N - k) k]``; reproducible for a seed."""
    rng = random.Random(seed)
    tops = [BOX_FACTOR * s for s in eep_squares(N)]
    pts = []
    for _ in range(count):
        pts.append(("sq", tuple(top * Fraction(rng.randint(0, denominator), denominator) for top in tops)))
    return pts


def scan_points(cfg: ScanConfig) -> list:
    if cfg.samples:
        return random_points(cfg.N, cfg.samples, cfg.seed)
    if not cfg.grid:
        raise ConfigError("either grid or samples must be given")
    return grid_points(cfg)


def run_scan(cfg: ScanConfig) -> list[dict]:
    cfg.validate()
    items = list(enumerate(scan_points(cfg)))
    tasks = [(cfg.N, chunk, cfg.mode, cfg.epsilon, cfg.spectrum) for chunk in _chunks(items, cfg.threads)]
    return [rec for part in _run_chunks(_evaluate_chunk, tasks, cfg.threads) for rec in part]


# --- boundary campaigns ---------------------------------------------------------------


def boundary_fields(J: int) -> list[str]:
    return (
        ["index"]
        + [f"d_{k}" for k in range(1, J + 1)]
        + ["r"]
        + [f"g_{k}" for k in range(1, J + 1)]
        + ["min_root_gap", "min_root", "gap_ok", "error"]
    )


def ray_directions(N: int, rays, seed: int = 0) -> list[tuple]:
    """Explicit directions, or ``rays`` directions spread over the positive orthant.

    With two couplings the directions are evenly spaced in angle; with more
    they are drawn from a seeded normal distribution and folded into the
    orthant.  A single coupling has the one direction ``(1,)``.
    """
    J = check_dimension(N) // 2
    if rays is None:
        rays = 1
    if not isinstance(rays, int):
        return [tuple(float(x) for x in d) for d in rays]
    if J == 1:
        return [(1.0,)] * rays
    if J == 2:
        if rays == 1:
            return [(1.0, 1.0)]
        return [(math.cos(t), math.sin(t)) for t in np.linspace(0.0, math.pi / 2, rays)]
    rng = np.random.default_rng(seed)
    return [tuple(float(x) for x in np.abs(rng.standard_normal(J))) for _ in range(rays)]


def _boundary_chunk(args):
    N, items, tol, method, epsilon = args
    J = N // 2
    out = []
    for index, d in items:
        rec = {"index": index}
        for k, x in enumerate(d, start=1):
            rec[f"d_{k}"] = x
        try:
            bp = boundary_bisect(N, d, tol=tol, method=method, epsilon=epsilon)
        except NoBoundaryFound as exc:
            rec.update({"r": "", "min_root_gap": "", "min_root": "", "gap_ok": "", "error": str(exc)})
            rec.update({f"g_{k}": "" for k in range(1, J + 1)})
        else:
            rec["r"] = bp.r
            rec.update({f"g_{k}": float(g) for k, g in enumerate(bp.couplings.g, start=1)})
            rec.update({"min_root_gap": bp.min_root_gap, "min_root": bp.min_root, "gap_ok": bp.gap_ok, "error": ""})
        out.append({k: rec[k] for k in boundary_fields(J)})
    return out


def run_boundary(cfg: ScanConfig, method: str = "oracle") -> list[dict]:
    cfg.validate()
    dirs = ray_directions(cfg.N, cfg.rays, cfg.seed)
    items = list(enumerate(dirs))
    tasks = [(cfg.N, chunk, cfg.tol, method, cfg.epsilon) for chunk in _chunks(items, cfg.threads)]
    return [rec for part in _run_chunks(_boundary_chunk, tasks, cfg.threads) for rec in part]


# --- serialization ---------------------------------------------------------------------


def _plain(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.generic):
        return v.item()
    return v


def _csv_cell(v):
    v = _plain(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def dumps(records: list[dict], fmt: str, columns: list[str] | None = None) -> str:
    """Render records as CSV (header + one line each) or a JSON array."""
    if fmt == "json":
        return json.dumps([{k: _plain(v) for k, v in r.items()} for r in records], indent=1, allow_nan=False) + "\n"
    if fmt != "csv":
        raise ConfigError(f"unknown format {fmt!r}")
    columns = columns or (list(records[0]) if records else [])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        writer.writerow([_csv_cell(r.get(k, "")) for k in columns])
    return buf.getvalue()


def config_dict(cfg: ScanConfig) -> dict:
    return asdict(cfg)
