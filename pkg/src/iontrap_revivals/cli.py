"""Command-line entry point: CSV tables for every figure, plus the check suite.

Option values are resolved as command-line flag, then ``--config`` file
(flat ``key = value`` lines, ``#`` comments), then built-in default.
Output goes to ``--out`` or, if unset, to ``$IONTRAP_REVIVALS_OUT`` or
``./iontrap_out``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .approx import RegimeError
from .dynamics import FREQ_METHODS
from .figures import FIG4_PRESETS, FIGURES, _padded, fig5, make_figure, table1
from .hilbert import TruncationError
from .tables import Table, write_csv

OUT_ENV = "IONTRAP_REVIVALS_OUT"
DEFAULT_OUT = "iontrap_out"

# option name -> (type, default); a default of None means "let the command decide"
OPTIONS = {
    "N": (str, None),
    "eta": (float, None),
    "j": (int, 1),
    "M": (str, None),
    "samples": (int, 1000),
    "seed": (int, 0),
    "tmax": (float, None),
    "freq_method": (str, "laguerre_exact"),
    "out": (str, None),
    "preset": (str, "alpha"),
    "resolution": (int, None),
    "half_width": (float, None),
    "center": (complex, 0j),
    "state": (str, "t_h"),
    "N_min": (float, 80.0),
    "N_max": (float, 800.0),
    "stride": (int, 1),
    "phi_samples": (int, 50),
    "table1_tol": (float, None),
    "only": (str, None),
}


class ConfigError(ValueError):
    pass


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file into typed option values."""
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in OPTIONS:
            raise ConfigError(f"{path}:{lineno}: cannot use {raw.strip()!r}")
        cfg[key] = OPTIONS[key][0](value.strip())
    return cfg


def resolve(args: argparse.Namespace) -> dict:
    cfg = read_config(args.config) if args.config else {}
    out = {}
    for key, (_, default) in OPTIONS.items():
        flag = getattr(args, key, None)
        out[key] = flag if flag is not None else cfg.get(key, default)
    if out["freq_method"] not in FREQ_METHODS:
        raise ConfigError(f"freq_method must be one of {FREQ_METHODS}")
    if out["out"] is None:
        out["out"] = os.environ.get(OUT_ENV, DEFAULT_OUT)
    return out


def _floats(text):
    return None if text is None else tuple(float(v) for v in str(text).split(","))


def _ints(text):
    return None if text is None else tuple(int(v) for v in str(text).split(","))


def _N_values(cfg, x_j):
    """``--N`` as a comma list, or a single N derived from ``--eta`` at ``x_j``."""
    if cfg["N"] is not None:
        return _floats(cfg["N"])
    if cfg["eta"] is not None:
        return (x_j / (4 * cfg["eta"] ** 2),)
    return None


def _emit(table: Table, cfg: dict, filename: str) -> Path:
    table.meta.setdefault("seed", cfg["seed"])
    path = write_csv(table, Path(cfg["out"]) / filename)
    print(path)
    return path


def cmd_table1(cfg: dict) -> int:
    _emit(table1(), cfg, "table1.csv")
    return 0


def cmd_figure(name: str, cfg: dict) -> int:
    from .protocols import special_point

    if name not in FIGURES:
        raise ConfigError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}")
    kw = {}
    if name in ("fig2", "fig3", "fig6"):
        x_j = special_point(2 if name == "fig6" else 1).x
        Ns = _N_values(cfg, x_j)
        if Ns:
            kw["N_values"] = Ns
        if cfg["tmax"] is not None:
            kw["tmax"] = cfg["tmax"]
        if name != "fig3":
            kw.update(samples=cfg["samples"], seed=cfg["seed"])
    if name == "fig4":
        if cfg["preset"] not in FIG4_PRESETS:
            raise ConfigError(f"preset must be one of {sorted(FIG4_PRESETS)}")
        kw["preset"] = cfg["preset"]
        if cfg["resolution"]:
            kw["resolution"] = cfg["resolution"]
        if cfg["half_width"]:
            kw["half_width"] = cfg["half_width"]
    if name == "fig5":
        kw.update(j=cfg["j"], N_min=cfg["N_min"], N_max=cfg["N_max"], stride=cfg["stride"],
                  phi_samples=cfg["phi_samples"], M_values=_ints(cfg["M"]))
    if name == "fig7":
        if cfg["N"] is not None:
            kw["N"] = _floats(cfg["N"])[0]
        if cfg["resolution"]:
            kw["resolution"] = cfg["resolution"]
        if cfg["half_width"]:
            kw["half_width"] = cfg["half_width"]
    else:
        kw["freq_method"] = cfg["freq_method"]
    table = make_figure(name, **kw)
    _emit(table, cfg, f"{name}.csv")
    return 0


def cmd_bell_sweep(cfg: dict) -> int:
    table = fig5(j=cfg["j"], N_min=cfg["N_min"], N_max=cfg["N_max"], stride=cfg["stride"],
                 phi_samples=cfg["phi_samples"], freq_method=cfg["freq_method"],
                 M_values=_ints(cfg["M"]))
    _emit(table, cfg, "bell_sweep.csv")
    fb = table.column("F_B")
    print(f"min F_B = {fb.min():.4f} over {len(fb)} magic N values")
    return 0


def cmd_wigner(cfg: dict) -> int:
    """Wigner field of the half-revival mode state, the pure cat, or a zoom of either."""
    from .analysis import wigner
    from .approx import time_scales
    from .dynamics import ModelParams, evolve_exact
    from .hilbert import cat_state, default_truncation, reduced_mode_density
    from .protocols import BELL_LABELS, bell_input, magic_N, nearest_magic

    if cfg["M"] is not None:
        mp = magic_N(cfg["j"], _ints(cfg["M"])[0])
    elif cfg["N"] is not None:
        mp = nearest_magic(cfg["j"], _floats(cfg["N"])[0])
    else:
        mp = nearest_magic(cfg["j"], FIG4_PRESETS[cfg["preset"]])
    n_max = default_truncation(mp.N)
    alpha = math.sqrt(mp.N)
    if cfg["state"] == "cat":
        psi = cat_state(alpha, 0, n_max).amplitudes
        rho = np.outer(psi, psi.conj())
    elif cfg["state"] == "t_h":
        p = ModelParams(eta=mp.eta, n_max=n_max, freq_method=cfg["freq_method"])
        t_h = time_scales(mp.coefficients()).t_h
        rho = reduced_mode_density(evolve_exact(bell_input(BELL_LABELS[0], alpha, n_max), t_h, p))
    else:
        raise ConfigError("state must be 'cat' or 't_h'")
    hw = cfg["half_width"] or 1.5 * alpha
    res = cfg["resolution"] or 201
    reach = abs(cfg["center"]) + hw * math.sqrt(2)
    fld = wigner(_padded(rho, reach), cfg["center"], hw, res)
    rows = [(b.real, b.imag, w) for b, w in zip(fld.betas.ravel(), fld.values.ravel())]
    table = Table(
        "wigner", ["re_beta", "im_beta", "W"], rows,
        meta={"state": cfg["state"], "j": cfg["j"], "M": mp.M, "N": mp.N, "alpha": alpha,
              "eta": mp.eta, "center": str(cfg["center"]), "half_width": hw, "resolution": res,
              "freq_method": cfg["freq_method"]},
    )
    _emit(table, cfg, f"wigner_{cfg['state']}.csv")
    return 0


def cmd_check(cfg: dict) -> int:
    from .checks import CHECKS, run_checks

    ids = None
    if cfg["only"]:
        ids = [c.strip() for c in cfg["only"].split(",")]
        unknown = [c for c in ids if c not in CHECKS]
        if unknown:
            raise ConfigError(f"unknown check ids {unknown}; choose from {list(CHECKS)}")
    t0 = time.perf_counter()
    results = run_checks(ids, table1_tol=cfg["table1_tol"], freq_method=cfg["freq_method"])
    for r in results:
        print(r.line(), file=sys.stderr)
    report = {
        "code_version": __version__,
        "freq_method": cfg["freq_method"],
        "passed": all(r.passed for r in results),
        "seconds": time.perf_counter() - t0,
        "checks": [r.as_dict() for r in results],
    }
    text = json.dumps(report, indent=2, default=float)
    print(text)
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    (out / "check_report.json").write_text(text + "\n")
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value file (flags take precedence)")
    common.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    common.add_argument("--freq-method", dest="freq_method", choices=FREQ_METHODS)
    common.add_argument("--seed", type=int)

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--N", help="mean phonon number; comma list where a figure takes several")
    model.add_argument("--eta", type=float, help="Lamb-Dicke parameter (sets N from x_j)")
    model.add_argument("--j", type=int, help="special-point index")
    model.add_argument("--M", help="magic-N index (comma list for sweeps)")
    model.add_argument("--samples", type=int)
    model.add_argument("--tmax", type=float, help="end of the time grid in units of the natural scale")
    model.add_argument("--preset", help=f"one of {sorted(FIG4_PRESETS)}")
    model.add_argument("--resolution", type=int)
    model.add_argument("--half-width", dest="half_width", type=float)
    model.add_argument("--N-min", dest="N_min", type=float)
    model.add_argument("--N-max", dest="N_max", type=float)
    model.add_argument("--stride", type=int)
    model.add_argument("--phi-samples", dest="phi_samples", type=int)

    parser = argparse.ArgumentParser(prog="iontrap-revivals", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table1", parents=[common], help="special points x_j and h derivatives")
    fig = sub.add_parser("figure", parents=[common, model], help="CSV data for one figure")
    fig.add_argument("name", help=", ".join(sorted(FIGURES)))
    sub.add_parser("bell-sweep", parents=[common, model], help="Bell fidelity over magic N")
    wig = sub.add_parser("wigner", parents=[common, model], help="Wigner field (with zoom window)")
    wig.add_argument("--state", choices=("cat", "t_h"))
    wig.add_argument("--center", type=complex, help="grid centre, e.g. 0+0j")
    chk = sub.add_parser("check", parents=[common], help="acceptance checks, JSON report")
    chk.add_argument("--table1-tol", dest="table1_tol", type=float,
                     help="absolute tolerance replacing the printed precision")
    chk.add_argument("--only", help="comma-separated check ids")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        if args.command == "table1":
            return cmd_table1(cfg)
        if args.command == "figure":
            return cmd_figure(args.name, cfg)
        if args.command == "bell-sweep":
            return cmd_bell_sweep(cfg)
        if args.command == "wigner":
            return cmd_wigner(cfg)
        return cmd_check(cfg)
    except (ConfigError, RegimeError, TruncationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
