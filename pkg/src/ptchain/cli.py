"""``ptchain`` command line.

Exit codes: 0 Inside or success, 1 Outside, 2 boundary band, 64 usage,
65 bad data or config, 70 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .chain_model import CouplingVector
from .criteria import DEFAULT_EPSILON, dispatch
from .errors import InconsistencyError, PTChainError, RootFindingError
from .geometry import dep_solve_N6, eep_point
from .oracle import numeric_spectrum, oracle_verdict
from .scan import (
    ConfigError,
    ScanConfig,
    boundary_fields,
    dumps,
    random_points,
    record_fields,
    run_boundary,
    run_scan,
)
from .verdict import State

EXIT_INSIDE, EXIT_OUTSIDE, EXIT_BOUNDARY = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 64, 65, 70

_STATE_EXIT = {State.INSIDE: EXIT_INSIDE, State.OUTSIDE: EXIT_OUTSIDE, State.BOUNDARY: EXIT_BOUNDARY}
_GLOBAL_DEFAULTS = {"epsilon": DEFAULT_EPSILON, "format": None, "output": None, "seed": 0, "threads": 1, "config": None}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _range(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, steps = text.split(":")
        return float(lo), float(hi), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:STEPS, got {text!r}") from None


def _global_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--epsilon", type=float, default=argparse.SUPPRESS, help="boundary band width (default 1e-9)")
    g.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    g.add_argument("--output", metavar="PATH", default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    g.add_argument("--config", metavar="JSON", default=argparse.SUPPRESS, help="scan config file; flags override it")
    return p


def _point_options(p):
    p.add_argument("-N", type=int, required=True, help="matrix dimension, 2..11")
    p.add_argument("-g", type=_floats, help="couplings g_1..g_J, comma separated")
    p.add_argument("--exact", type=_rationals, metavar="SQUARES", help='exact g_k^2 as rationals, e.g. "5,8,9"')


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = _Parser(prog="ptchain", description="Reality domains of PT-symmetric chain Hamiltonians.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="classify one coupling vector")
    _point_options(p)
    p.add_argument("--spectrum", action="store_true", help="also report the numeric spectrum")

    p = sub.add_parser("spectrum", parents=[common], help="numeric spectrum of one coupling vector")
    _point_options(p)
    p.add_argument("--method", choices=("numpy", "mpmath"), default="numpy")

    p = sub.add_parser("scan", parents=[common], help="grid or random scan")
    p.add_argument("-N", type=int)
    p.add_argument("--grid", type=_range, action="append", metavar="MIN:MAX:STEPS", help="one per coupling")
    p.add_argument("--samples", type=int, help="random rational points in the box instead of a grid")
    p.add_argument("--mode", choices=("criteria", "oracle", "both"))
    p.add_argument("--no-spectrum", action="store_true", help="skip the root-gap columns")

    p = sub.add_parser("boundary", parents=[common], help="bisect rays from the origin to the boundary")
    p.add_argument("-N", type=int)
    p.add_argument("--rays", type=int, help="number of rays in the positive orthant")
    p.add_argument("--ray", type=_floats, action="append", help="explicit direction (repeatable)")
    p.add_argument("--tol", type=float)
    p.add_argument("--method", choices=("oracle", "criteria"), default="oracle")

    p = sub.add_parser("eep", parents=[common], help="EEP corners and their exact certificate")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("-N", type=int)
    grp.add_argument("--all", action="store_true")

    p = sub.add_parser("dep", parents=[common], help="N = 6 double-EP points over a range of g_1")
    p.add_argument("--c-range", type=_range, required=True, metavar="MIN:MAX:COUNT")
    p.add_argument("--a-max", type=float, help="only accept g_3 <= A_MAX (3 restricts to the physical branch)")

    p = sub.add_parser("verify", parents=[common], help="criteria against the exact oracle on random points")
    p.add_argument("-N", type=int, action="append", help="dimension (repeatable; default 2..11)")
    p.add_argument("--samples", type=int, default=1000)
    return parser


def _globals(args) -> dict:
    return {k: getattr(args, k, v) for k, v in _GLOBAL_DEFAULTS.items()}


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _coupling(args) -> CouplingVector:
    """``--exact`` wins over ``-g``; when both are given they must agree to display precision."""
    if args.g is None and args.exact is None:
        raise UsageError("give -g or --exact")
    if args.exact is None:
        return CouplingVector(args.N, args.g)
    if args.g is not None:
        if len(args.g) != len(args.exact):
            raise UsageError("-g and --exact have different lengths")
        for g, sq in zip(args.g, args.exact):
            if abs(g * g - float(sq)) > 1e-6 * max(1.0, float(sq)):
                raise UsageError(f"-g {g} does not match --exact {sq}")
    return CouplingVector.from_squares(args.N, args.exact)


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    if x is None:
        return "-"
    return f"{float(x):.12g}"


def _spectrum_dict(rep) -> dict:
    return {
        "classification": str(rep.classification),
        "degeneracy_pattern": list(rep.degeneracy_pattern),
        "s_roots": [[z.real, z.imag] for z in rep.s_roots],
        "energies": [[z.real, z.imag] for z in rep.energies],
        "min_root_gap": rep.min_root_gap,
        "min_root": rep.min_root,
        "residual": rep.residual,
    }


def _spectrum_text(rep) -> list[str]:
    return [
        f"classification: {rep.classification}",
        f"degeneracy pattern: {list(rep.degeneracy_pattern)}",
        "s roots: " + ", ".join(_fmt(z) for z in rep.s_roots),
        "energies: " + ", ".join(_fmt(z) for z in rep.energies),
        f"min root gap: {_fmt(rep.min_root_gap)}   min |root|: {_fmt(rep.min_root)}",
    ]


def cmd_check(args, opts) -> int:
    c = _coupling(args)
    v = dispatch(c, opts["epsilon"])
    aux = v.aux
    rep = numeric_spectrum(c) if args.spectrum else None
    if opts["format"] == "json":
        out = {
            "N": c.N,
            "g": [float(x) for x in c.g],
            "verdict": str(v.state),
            "margin": v.margin if math.isfinite(v.margin) else str(v.margin),
            "witness": v.witness,
            "aux": {k: getattr(aux, k) for k in ("B", "q", "C", "D", "G")},
            "notes": list(v.notes),
        }
        if rep is not None:
            out["spectrum"] = _spectrum_dict(rep)
        _emit(json.dumps(out, indent=1) + "\n", opts["output"])
    else:
        lines = [
            f"N = {c.N}, g = ({', '.join(_fmt(x) for x in c.g)})",
            f"verdict: {v.state}",
            f"margin: {_fmt(v.margin)}",
        ]
        if v.witness:
            lines.append(f"witness: {v.witness}")
        lines += [f"note: {n}" for n in v.notes]
        lines.append("aux: " + "  ".join(f"{k}={_fmt(getattr(aux, k))}" for k in ("B", "q", "C", "D", "G")))
        if rep is not None:
            lines += _spectrum_text(rep)
        _emit("\n".join(lines) + "\n", opts["output"])
    return _STATE_EXIT[v.state]


def cmd_spectrum(args, opts) -> int:
    c = _coupling(args)
    rep = numeric_spectrum(c, method=args.method)
    if opts["format"] == "json":
        _emit(json.dumps(_spectrum_dict(rep), indent=1) + "\n", opts["output"])
    else:
        _emit("\n".join(_spectrum_text(rep)) + "\n", opts["output"])
    return 0


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return data


def _scan_config(args, opts, overrides: dict) -> ScanConfig:
    data = _load_config(opts["config"])
    for key in ("epsilon", "format", "output", "seed", "threads"):
        if hasattr(args, key):
            data[key] = getattr(args, key)
    data.update({k: v for k, v in overrides.items() if v is not None})
    data.setdefault("format", "csv")
    if data.get("format") is None:
        data["format"] = "csv"
    if "N" not in data:
        raise UsageError("-N is required (on the command line or in the config)")
    return ScanConfig.from_dict(data)


def cmd_scan(args, opts) -> int:
    cfg = _scan_config(
        args,
        opts,
        {
            "N": args.N,
            "grid": [list(g) for g in args.grid] if args.grid else None,
            "samples": args.samples,
            "mode": args.mode,
            "spectrum": False if args.no_spectrum else None,
        },
    )
    records = run_scan(cfg)
    _emit(dumps(records, cfg.format, record_fields(cfg.N // 2)), cfg.output)
    if cfg.mode == "both" and any(r["mismatch"] is True for r in records):
        n = sum(r["mismatch"] is True for r in records)
        sys.stderr.write(f"ptchain: {n} criteria/oracle mismatches outside the band\n")
        return EXIT_INTERNAL
    return 0


def cmd_boundary(args, opts) -> int:
    rays = args.ray if args.ray else args.rays
    cfg = _scan_config(args, opts, {"N": args.N, "rays": rays, "tol": args.tol})
    records = run_boundary(cfg, method=args.method)
    _emit(dumps(records, cfg.format, boundary_fields(cfg.N // 2)), cfg.output)
    return 0


def cmd_eep(args, opts) -> int:
    dims = range(2, 12) if args.all else [args.N]
    records = []
    for N in dims:
        e = eep_point(N)
        records.append(
            {
                "N": N,
                "g_squared": " ".join(str(s) for s in e.squares),
                "g": " ".join(repr(float(x)) for x in e.g.g),
                "coefficients": " ".join(str(x) for x in e.form.normalized),
                "all_zero": all(x == 0 for x in e.form.normalized),
                "literal_products": " ".join(str(x) for x in e.literal),
                "literal_vanishes": e.literal_vanishes,
            }
        )
    _emit(dumps(records, opts["format"] or "csv"), opts["output"])
    return 0


def cmd_dep(args, opts) -> int:
    lo, hi, count = args.c_range
    if count < 1 or not 0 < lo <= hi:
        raise UsageError("--c-range needs 0 < MIN <= MAX and COUNT >= 1")
    cs = [lo] if count == 1 else [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    records = []
    for c in cs:
        d = dep_solve_N6(c, a_max=args.a_max)
        if d is None:
            records.append({"c": c, "valid": False})
            continue
        e = d.energies_expected()
        energies = d.spectrum.energies
        dev = max(abs(x - y) for x, y in zip(sorted(energies, key=_ekey), sorted(e, key=_ekey)))
        records.append(
            {
                "c": c,
                "valid": True,
                "b": d.b,
                "a": d.a,
                "s_double": d.s_double,
                "z_re": d.z.real,
                "z_im": d.z.imag,
                "on_horizon": d.on_horizon,
                "pattern": " ".join(map(str, d.spectrum.degeneracy_pattern)),
                "energy_deviation": dev / max(1.0, abs(4 * d.z)),
                "second_condition_residual": d.residuals["second_condition"],
                "minus_R_factored": d.residuals["minus_R_factored"],
            }
        )
    cols = [
        "c", "valid", "b", "a", "s_double", "z_re", "z_im", "on_horizon", "pattern",
        "energy_deviation", "second_condition_residual", "minus_R_factored",
    ]
    _emit(dumps(records, opts["format"] or "csv", cols), opts["output"])
    return 0


def _ekey(z):
    return (round(z.real, 9), round(z.imag, 9))


def cmd_verify(args, opts) -> int:
    dims = args.N or list(range(2, 12))
    eps = opts["epsilon"]
    records, failures = [], 0
    for N in dims:
        counts = {"inside": 0, "outside": 0, "boundary": 0, "band": 0, "mismatch": 0}
        for _, sq in random_points(N, args.samples, opts["seed"] + N):
            c = CouplingVector.from_squares(N, sq)
            v, o = dispatch(c, eps), oracle_verdict(c)
            counts[str(o.state)] += 1
            if abs(v.margin) <= eps:
                counts["band"] += 1
            elif v.state != o.state:
                counts["mismatch"] += 1
        failures += counts["mismatch"]
        records.append({"N": N, "samples": args.samples, **counts})
    _emit(dumps(records, opts["format"] or "csv"), opts["output"])
    return EXIT_INTERNAL if failures else 0


COMMANDS = {
    "check": cmd_check,
    "spectrum": cmd_spectrum,
    "scan": cmd_scan,
    "boundary": cmd_boundary,
    "eep": cmd_eep,
    "dep": cmd_dep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    opts = _globals(args)
    try:
        return COMMANDS[args.command](args, opts)
    except UsageError as exc:
        sys.stderr.write(f"ptchain: usage error: {exc}\n")
        return EXIT_USAGE
    except InconsistencyError as exc:
        sys.stderr.write(f"ptchain: internal inconsistency: {exc}\n")
        return EXIT_INTERNAL
    except (ConfigError, ValueError, RootFindingError, PTChainError, OSError) as exc:
        sys.stderr.write(f"ptchain: {type(exc).__name__}: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
