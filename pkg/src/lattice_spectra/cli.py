"""Command-line front end.

Subcommands map one-to-one onto the analysis operations: band, spectrum,
verify, critical, plotdata.  Reports are JSON on stdout (CSV for plot
data); stderr carries diagnostics only.  Exit codes: 0 pass, 1 assertion
failure, 2 config/input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import analysis, sampling
from .dispersion import band_geometry
from .errors import InputError, NumericalFailure
from .model import (
    MassPair,
    MomentumGrid,
    Potential,
    Quasimomentum,
    load_potential,
)
from .operators import build_h
from .parallel import parallel_map
from .spectral import (
    count_above,
    count_below,
    default_tie_tol,
    eig_sym,
    verify_counting_theorem,
)

SUITES = ("counting", "neraven", "bs", "threshold", "existence", "cheksiz", "positivity")


class ConfigError(InputError):
    """CLI-level configuration problem."""


# ---------------------------------------------------------------------------
# Parsing helpers


def _parse_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise ConfigError(f"bad number in {text!r}") from exc


def _parse_k_path(text: str) -> list[Quasimomentum]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--k-path wants start:end:count, got {text!r}")
    start = np.array(_parse_triple(parts[0]))
    end = np.array(_parse_triple(parts[1]))
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad point count {parts[2]!r}") from exc
    if count < 2:
        raise ConfigError("k-path needs at least 2 points")
    ts = np.linspace(0.0, 1.0, count)
    return [Quasimomentum(*(start + t * (end - start))) for t in ts]


@dataclass
class RunConfig:
    masses: MassPair
    potential: Optional[Potential]
    grid: MomentumGrid
    k_list: list[Quasimomentum]
    schedule: analysis.ZSchedule
    tie_tol: Optional[float]
    unit_tol: float
    overlap_tol: float
    pos_tol: Optional[float]
    seed: int
    trials: Optional[int]
    refine: bool
    out: Optional[str]
    fmt: str


def _config_from_args(args: argparse.Namespace, need_potential: bool) -> RunConfig:
    mp = args.masses.split(",")
    if len(mp) != 2:
        raise ConfigError(f"--masses wants m1,m2, got {args.masses!r}")
    try:
        masses = MassPair(float(mp[0]), float(mp[1]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    pot = None
    if args.potential is not None:
        try:
            with open(args.potential, "rb") as fh:
                pot = load_potential(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read potential file: {exc}") from exc
    elif need_potential:
        raise ConfigError("this command requires --potential")
    try:
        grid = MomentumGrid(args.grid, args.offset)
        schedule = analysis.ZSchedule(args.z_delta0, args.z_ratio, args.z_steps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    k_list: list[Quasimomentum] = []
    for trip in args.k or []:
        k_list.append(Quasimomentum(*_parse_triple(trip)))
    if args.k_path:
        k_list.extend(_parse_k_path(args.k_path))
    for name in ("tie_tol", "unit_tol", "overlap_tol", "pos_tol"):
        val = getattr(args, name)
        if val is not None and val <= 0.0:
            raise ConfigError(f"--{name.replace('_', '-')} must be > 0")
    return RunConfig(
        masses=masses,
        potential=pot,
        grid=grid,
        k_list=k_list,
        schedule=schedule,
        tie_tol=args.tie_tol,
        unit_tol=args.unit_tol if args.unit_tol is not None else 1e-6,
        overlap_tol=args.overlap_tol if args.overlap_tol is not None else 1e-6,
        pos_tol=args.pos_tol,
        seed=args.seed,
        trials=args.trials,
        refine=args.refine,
        out=args.out,
        fmt=args.format,
    )


def _require_k(cfg: RunConfig) -> list[Quasimomentum]:
    if not cfg.k_list:
        raise ConfigError("this command requires --k or --k-path")
    return cfg.k_list


# ---------------------------------------------------------------------------
# Report plumbing


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc, out: Optional[str]) -> None:
    _emit(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n", out)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_band(cfg: RunConfig) -> int:
    records = [
        {"k": list(k.components), **dataclasses.asdict(band_geometry(cfg.masses, k))}
        for k in _require_k(cfg)
    ]
    _emit_json({"band": records}, cfg.out)
    return 0


def _spectrum_record(cfg: RunConfig, k: Quasimomentum) -> dict:
    geo = band_geometry(cfg.masses, k)
    eigs = eig_sym(build_h(cfg.masses, k, cfg.potential, cfg.grid))
    tol = cfg.tie_tol if cfg.tie_tol is not None else default_tie_tol(eigs)
    return {
        "k": list(k.components),
        "e_min": geo.e_min,
        "e_max": geo.e_max,
        "eigenvalues": eigs,
        "n_below_band": count_below(geo.e_min, eigs, tol),
        "n_above_band": count_above(geo.e_max, eigs, tol),
    }


def cmd_spectrum(cfg: RunConfig) -> int:
    ks = _require_k(cfg)
    records = parallel_map(lambda k: _spectrum_record(cfg, k), ks)
    _emit_json({"spectrum": records}, cfg.out)
    return 0


def cmd_critical(cfg: RunConfig) -> int:
    result = analysis.critical_coupling(cfg.masses, cfg.potential, cfg.grid, cfg.refine)
    _emit_json(dataclasses.asdict(result), cfg.out)
    return 0


def _suite_counting(cfg: RunConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    trials = cfg.trials or 200
    failures = []
    for t in range(trials):
        dim = int(rng.integers(2, 51))
        a = sampling.random_symmetric(rng, dim)
        rank = int(rng.integers(1, min(10, dim) + 1))
        v = sampling.random_low_rank_symmetric(rng, dim, rank)
        check = verify_counting_theorem(a, v)
        if not check.all_hold:
            failures.append({"trial": t, "check": dataclasses.asdict(check)})
    return {"trials": trials, "failures": failures, "pass": not failures}


def _suite_bs(cfg: RunConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    trials = cfg.trials or 50
    sizes = (4, 6, 8)
    cases = []
    ok = True
    for t in range(trials):
        m = sampling.random_masses(rng)
        k = sampling.random_quasimomentum(rng)
        pot = sampling.random_potential(rng, radius=1, nonnegative=True)
        grid = MomentumGrid(sizes[t % len(sizes)], cfg.grid.offset)
        z = band_geometry(m, k).e_min - 1.0
        check = analysis.bs_check(m, k, pot, z, grid, cfg.tie_tol)
        cases.append(
            {"trial": t, "n": grid.n_per_dim, "n_minus": check.n_minus,
             "n_plus": check.n_plus, "equal": check.equal}
        )
        ok = ok and check.equal
    return {"trials": trials, "cases": cases, "pass": ok}


def _suite_threshold(cfg: RunConfig) -> dict:
    records = []
    ok = True
    for k in _require_k(cfg):
        tc = analysis.threshold_count(cfg.masses, k, cfg.potential, cfg.grid, cfg.schedule)
        geo = band_geometry(cfg.masses, k)
        eigs = eig_sym(build_h(cfg.masses, k, cfg.potential, cfg.grid))
        tol = cfg.tie_tol if cfg.tie_tol is not None else default_tie_tol(eigs)
        direct = count_below(geo.e_min, eigs, tol)
        match = (not tc.divergent) and tc.stabilized == direct
        records.append(
            {"k": list(k.components), "counts": list(tc.counts),
             "stabilized": tc.stabilized, "divergent": tc.divergent,
             "direct_n_below": direct, "pass": match}
        )
        ok = ok and match
    return {"records": records, "pass": ok}


def _suite_neraven(cfg: RunConfig) -> dict:
    records = []
    ok = True
    for k in _require_k(cfg):
        rep = analysis.verify_neraven(cfg.masses, k, cfg.potential, cfg.grid,
                                      tie_tol=cfg.tie_tol)
        records.append({"k": list(k.components), **_jsonable(rep), "pass": rep.all_ok})
        ok = ok and rep.all_ok
    return {"records": records, "pass": ok}


def _suite_existence(cfg: RunConfig) -> dict:
    rep = analysis.verify_existence(
        cfg.masses, cfg.potential, _require_k(cfg), cfg.grid,
        unit_tol=cfg.unit_tol, overlap_tol=cfg.overlap_tol,
        pos_tol=cfg.pos_tol, tie_tol=cfg.tie_tol,
    )
    return {**_jsonable(rep), "pass": rep.all_ok}


def _suite_cheksiz(cfg: RunConfig) -> dict:
    ks = _require_k(cfg)
    rep = analysis.verify_cheksiz(cfg.masses, ks[0], cfg.potential, cfg.grid, cfg.schedule)
    return {**_jsonable(rep), "pass": rep.holds}


def _suite_positivity(cfg: RunConfig) -> dict:
    ks = list(cfg.k_list)
    if not ks:
        rng = np.random.default_rng(cfg.seed)
        ks = [sampling.random_quasimomentum(rng) for _ in range(cfg.trials or 20)]
    rep = analysis.positivity_check(cfg.masses, cfg.potential, ks, cfg.grid, cfg.pos_tol)
    return {**_jsonable(rep), "pass": rep.all_ok}


def cmd_verify(cfg: RunConfig, suites: Sequence[str]) -> int:
    runners = {
        "counting": _suite_counting,
        "bs": _suite_bs,
        "threshold": _suite_threshold,
        "neraven": _suite_neraven,
        "existence": _suite_existence,
        "cheksiz": _suite_cheksiz,
        "positivity": _suite_positivity,
    }
    needs_pot = {"threshold", "neraven", "existence", "cheksiz", "positivity"}
    report = {}
    all_pass = True
    for name in suites:
        if name in needs_pot and cfg.potential is None:
            raise ConfigError(f"suite {name!r} requires --potential")
        report[name] = runners[name](cfg)
        all_pass = all_pass and report[name]["pass"]
    report["pass"] = all_pass
    _emit_json(report, cfg.out)
    return 0 if all_pass else 1


def cmd_plotdata(cfg: RunConfig, quantity: str) -> int:
    ks = _require_k(cfg)
    buf = io.StringIO()
    writer = csv.writer(buf)
    if quantity == "band_edges":
        writer.writerow(["k1", "k2", "k3", "e_min", "e_max", "w_b", "w_1b", "w_2b", "w_3b"])
        for k in ks:
            geo = band_geometry(cfg.masses, k)
            writer.writerow([*k.components, geo.e_min, geo.e_max, geo.w_b, *geo.w_jb])
    elif quantity == "below_band_eigs":
        if cfg.potential is None:
            raise ConfigError("below_band_eigs requires --potential")
        writer.writerow(["k1", "k2", "k3", "e_min", "n_below", "below_band_eigs"])
        for k in ks:
            geo = band_geometry(cfg.masses, k)
            eigs = eig_sym(build_h(cfg.masses, k, cfg.potential, cfg.grid))
            tol = cfg.tie_tol if cfg.tie_tol is not None else default_tie_tol(eigs)
            below = eigs[eigs < geo.e_min - tol]
            writer.writerow(
                [*k.components, geo.e_min, len(below), ";".join(repr(float(x)) for x in below)]
            )
    elif quantity == "bs_counts":
        if cfg.potential is None:
            raise ConfigError("bs_counts requires --potential")
        writer.writerow(["k1", "k2", "k3", "z", "n_plus"])
        for k in ks:
            tc = analysis.threshold_count(cfg.masses, k, cfg.potential, cfg.grid, cfg.schedule)
            for z, c in zip(tc.zs, tc.counts):
                writer.writerow([*k.components, z, c])
    else:
        raise ConfigError(f"unknown quantity {quantity!r}")
    _emit(buf.getvalue(), cfg.out)
    return 0


# ---------------------------------------------------------------------------
# Entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-spectra",
        description="Band geometry, spectra and theorem checks for two-particle "
        "lattice Schroedinger operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--masses", default="1,1", help="m1,m2 (default 1,1)")
        p.add_argument("--potential", help="potential JSON file")
        p.add_argument("--grid", type=int, default=8, help="nodes per dimension")
        p.add_argument("--offset", type=float, default=0.5, help="grid offset in [0,1)")
        p.add_argument("--k", action="append", help="quasi-momentum a,b,c (repeatable)")
        p.add_argument("--k-path", help="path spec a,b,c:d,e,f:COUNT")
        p.add_argument("--z-delta0", type=float, default=1.0)
        p.add_argument("--z-ratio", type=float, default=0.1)
        p.add_argument("--z-steps", type=int, default=7)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int)
        p.add_argument("--refine", action="store_true")
        p.add_argument("--tie-tol", type=float, dest="tie_tol")
        p.add_argument("--unit-tol", type=float, dest="unit_tol")
        p.add_argument("--overlap-tol", type=float, dest="overlap_tol")
        p.add_argument("--pos-tol", type=float, dest="pos_tol")
        p.add_argument("--out", help="write report to file instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    common(sub.add_parser("band", help="band geometry per k"))
    common(sub.add_parser("spectrum", help="eigenvalues and band counts per k"))
    p_verify = sub.add_parser("verify", help="run theorem verification suites")
    common(p_verify)
    p_verify.add_argument(
        "--suite", required=True,
        help="comma-separated subset of: " + ",".join(SUITES) + ", or 'all'",
    )
    common(sub.add_parser("critical", help="critical coupling of the base potential"))
    p_plot = sub.add_parser("plotdata", help="CSV data for external plotting")
    common(p_plot)
    p_plot.add_argument(
        "--quantity", required=True,
        choices=("band_edges", "below_band_eigs", "bs_counts"),
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "band":
            return cmd_band(_config_from_args(args, need_potential=False))
        if args.command == "spectrum":
            return cmd_spectrum(_config_from_args(args, need_potential=True))
        if args.command == "critical":
            return cmd_critical(_config_from_args(args, need_potential=True))
        if args.command == "verify":
            names = args.suite.split(",") if args.suite != "all" else list(SUITES)
            for name in names:
                if name not in SUITES:
                    raise ConfigError(f"unknown suite {name!r}")
            if not names:
                raise ConfigError("empty suite list")
            return cmd_verify(_config_from_args(args, need_potential=False), names)
        if args.command == "plotdata":
            return cmd_plotdata(
                _config_from_args(args, need_potential=False), args.quantity
            )
        raise ConfigError(f"unknown command {args.command!r}")
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
