"""Command-line surface: spectrum tables, beta-sweep curves, momentum
eigenfunction samples, and the self-verification suite.

Emission is deterministic by construction: fixed row order (spectrum rows
sorted by (n, beta), sweep rows grouped by beta then n, momentum rows by
(p, x)), fixed float formatting (%.12e in CSV), LF line endings, no
timestamps.  Identical configuration gives byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import box, fd, momentum, verify
from .errors import ConfigError, MlqmError, OutsideFirstOrderDomain
from .params import NATURAL, SI_LIKE, ModelParams, validate_params

_SHARED_KEYS = {"beta", "hbar", "mass", "width", "alpha", "planck_length", "units", "out", "format"}
_COMMAND_KEYS = {
    "spectrum": {"n", "numeric", "grid_points"},
    "sweep": {"n_grid"},
    "momentum": {"p", "x_grid"},
    "verify": {"quick", "perturb_spectrum"},
}

_DEFAULT_SWEEP_BETAS = [0.0, 0.25, 0.5, 0.75, 1.0]


@dataclass
class RunConfig:
    """Resolved options for one command invocation."""

    command: str
    base_params: ModelParams
    betas: list[float]
    out: Path | None
    fmt: str
    levels: list[int] | None = None
    numeric: bool = False
    grid_points: int = 1999
    n_grid: np.ndarray | None = None
    p_values: list[float] | None = None
    x_grid: np.ndarray | None = None
    quick: bool = False
    perturb_spectrum: float = 0.0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlqm",
        description="Minimal-length quantum mechanics: box spectrum, momentum "
                    "eigenfunctions, and numerical self-verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(sp):
        sp.add_argument("--config", type=Path, help="JSON config file; flags override its keys")
        sp.add_argument("--beta", action="append", type=float,
                        help="deformation parameter; repeat for several values")
        sp.add_argument("--hbar", type=float)
        sp.add_argument("--mass", type=float)
        sp.add_argument("--width", type=float, help="box width a")
        sp.add_argument("--alpha", type=float, help="uncertainty-bound coefficient")
        sp.add_argument("--planck-length", dest="planck_length", type=float)
        sp.add_argument("--units", choices=[NATURAL, SI_LIKE])
        sp.add_argument("--out", type=Path, help="output path (default: stdout)")
        sp.add_argument("--format", choices=["csv", "json"])

    sp = sub.add_parser("spectrum", help="integer-level energy table, one row per (n, beta)")
    shared(sp)
    sp.add_argument("--n", action="append",
                    help="level or inclusive range, e.g. 3 or 1:10; repeatable")
    sp.add_argument("--numeric", action="store_true", default=None,
                    help="append finite-difference eigenvalue and relative gap columns")
    sp.add_argument("--grid-points", dest="grid_points", type=int,
                    help="interior FD grid points for --numeric (default 1999)")

    sp = sub.add_parser("sweep", help="continuous-n energy curves, one per beta")
    shared(sp)
    sp.add_argument("--n-grid", dest="n_grid", help="continuous levels lo:hi:step (default 0:5:0.05)")

    sp = sub.add_parser("momentum", help="momentum eigenfunction samples")
    shared(sp)
    sp.add_argument("--p", action="append", type=float, help="momentum eigenvalue; repeatable")
    sp.add_argument("--x-grid", dest="x_grid", help="sample positions lo:hi:count (default 0:10:201)")

    sp = sub.add_parser("verify", help="run the self-verification suite")
    shared(sp)
    sp.add_argument("--quick", action="store_true", default=None,
                    help="small FD grids; finishes in seconds")
    sp.add_argument("--perturb-spectrum", dest="perturb_spectrum", type=float,
                    help="fault-injection hook: scale the closed-form spectrum by (1+eps) "
                         "so the exactness check must fail")

    return parser


def _load_config_file(path: Path, command: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    allowed = _SHARED_KEYS | _COMMAND_KEYS[command]
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown config keys {unknown}; allowed: {sorted(allowed)}")
    return data


def _merged_value(name: str, args: argparse.Namespace, file_cfg: dict, default):
    flag = getattr(args, name, None)
    if flag is not None:
        return flag
    if name in file_cfg:
        return file_cfg[name]
    return default


def _as_float_list(value, field: str) -> list[float]:
    if isinstance(value, (int, float)):
        value = [value]
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{field} must be a number or list of numbers, got {value!r}") from exc


def _parse_levels(value) -> list[int]:
    if isinstance(value, (int, str)):
        value = [value]
    levels: list[int] = []
    for item in value:
        if isinstance(item, int):
            levels.append(item)
            continue
        s = str(item).strip()
        try:
            if ":" in s:
                lo_s, hi_s = s.split(":", 1)
                lo, hi = int(lo_s), int(hi_s)
                if hi < lo:
                    raise ConfigError(f"empty level range {s!r}")
                levels.extend(range(lo, hi + 1))
            else:
                levels.append(int(s))
        except ValueError as exc:
            raise ConfigError(f"cannot parse level spec {s!r}: expected int or lo:hi") from exc
    if not levels:
        raise ConfigError("no levels requested")
    if min(levels) < 1:
        raise ConfigError(f"n must be >= 1, got {min(levels)}")
    return sorted(set(levels))


def _parse_span(spec, field: str, kind: str) -> np.ndarray:
    parts = str(spec).split(":")
    if len(parts) != 3:
        raise ConfigError(f"{field} must look like lo:hi:{kind}, got {spec!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        last = int(parts[2]) if kind == "count" else float(parts[2])
    except ValueError as exc:
        raise ConfigError(f"cannot parse {field} {spec!r}") from exc
    if hi < lo:
        raise ConfigError(f"{field}: hi must be >= lo, got {spec!r}")
    if kind == "count":
        if last < 1:
            raise ConfigError(f"{field}: count must be >= 1, got {last}")
        return np.linspace(lo, hi, last)
    if last <= 0:
        raise ConfigError(f"{field}: step must be > 0, got {last}")
    ratio = (hi - lo) / last
    k = round(ratio)
    if abs(ratio - k) <= 1e-9 * max(1.0, abs(ratio)):
        return np.linspace(lo, hi, k + 1)
    k = math.floor(ratio + 1e-9)
    return lo + last * np.arange(k + 1)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    command = args.command
    file_cfg = _load_config_file(args.config, command) if getattr(args, "config", None) else {}

    base = ModelParams(
        hbar=float(_merged_value("hbar", args, file_cfg, 1.0)),
        mass=float(_merged_value("mass", args, file_cfg, 1.0)),
        box_width=float(_merged_value("width", args, file_cfg, 1.0)),
        beta=0.0,
        alpha=float(_merged_value("alpha", args, file_cfg, 0.0)),
        planck_length=float(_merged_value("planck_length", args, file_cfg, 1.0)),
        units=str(_merged_value("units", args, file_cfg, NATURAL)),
    )
    default_betas = _DEFAULT_SWEEP_BETAS if command == "sweep" else [0.0]
    betas = _as_float_list(_merged_value("beta", args, file_cfg, default_betas), "beta")
    if not betas:
        raise ConfigError("beta list must be non-empty")
    try:
        validate_params(base)
        for b in betas:
            validate_params(replace(base, beta=b))
    except MlqmError as exc:
        raise ConfigError(str(exc)) from exc
    betas = sorted(set(betas))

    out = _merged_value("out", args, file_cfg, None)
    cfg = RunConfig(
        command=command,
        base_params=base,
        betas=betas,
        out=Path(out) if out is not None else None,
        fmt=str(_merged_value("format", args, file_cfg, "csv")),
    )

    if command == "spectrum":
        cfg.levels = _parse_levels(_merged_value("n", args, file_cfg, "1:5"))
        cfg.numeric = bool(_merged_value("numeric", args, file_cfg, False))
        grid_points = int(_merged_value("grid_points", args, file_cfg, 1999))
        if cfg.numeric:
            if grid_points < 8:
                raise ConfigError(f"grid_points must be >= 8, got {grid_points}")
            if max(cfg.levels) > grid_points // 4:
                raise ConfigError(
                    f"n={max(cfg.levels)} needs grid_points >= {4 * max(cfg.levels)} "
                    f"(K <= N/4), got {grid_points}"
                )
        cfg.grid_points = grid_points
    elif command == "sweep":
        cfg.n_grid = _parse_span(_merged_value("n_grid", args, file_cfg, "0:5:0.05"), "n-grid", "step")
        if cfg.n_grid[0] < 0:
            raise ConfigError(f"continuous n must be >= 0, got {cfg.n_grid[0]}")
    elif command == "momentum":
        cfg.p_values = _as_float_list(_merged_value("p", args, file_cfg, [1.0]), "p")
        cfg.x_grid = _parse_span(_merged_value("x_grid", args, file_cfg, "0:10:201"), "x-grid", "count")
        if len(cfg.betas) != 1:
            raise ConfigError(f"momentum takes a single beta, got {cfg.betas}")
    elif command == "verify":
        cfg.quick = bool(_merged_value("quick", args, file_cfg, False))
        cfg.perturb_spectrum = float(_merged_value("perturb_spectrum", args, file_cfg, 0.0))
    return cfg


def _f(x) -> str:
    return f"{float(x):.12e}"


def _params_dict(params: ModelParams) -> dict:
    return {
        "hbar": params.hbar,
        "mass": params.mass,
        "width": params.box_width,
        "alpha": params.alpha,
        "planck_length": params.planck_length,
        "units": params.units,
    }


def _consistent_total(e0: float, shift: float) -> tuple[str, str, str]:
    """CSV fields for (e0, shift, total) that re-parse self-consistently.

    The total is re-rounded from the emitted e0 and shift strings so that
    parse(total) == round(parse(e0) + parse(shift)) holds exactly at the
    emitted precision.
    """
    e0_s, shift_s = _f(e0), _f(shift)
    return e0_s, shift_s, _f(float(e0_s) + float(shift_s))


def cmd_spectrum(cfg: RunConfig) -> str:
    """Energy table over integer levels; optional FD oracle columns."""
    fd_values: dict[float, np.ndarray] = {}
    if cfg.numeric:
        for beta in cfg.betas:
            problem = fd.FdProblem(params=replace(cfg.base_params, beta=beta),
                                   grid_points=cfg.grid_points)
            fd_values[beta] = fd.solve_lowest(problem, count=max(cfg.levels)).eigenvalues

    rows = []
    for n in cfg.levels:
        for beta in cfg.betas:
            params = replace(cfg.base_params, beta=beta)
            e0, shift = box.energy_terms(n, params)
            row = {"n": n, "beta": beta, "e0": e0, "shift": shift, "e_total": e0 + shift}
            if cfg.numeric:
                lam = float(fd_values[beta][n - 1])
                row["fd_eigenvalue"] = lam
                row["rel_gap"] = abs(lam - row["e_total"]) / row["e_total"]
            rows.append(row)

    if cfg.fmt == "json":
        return json.dumps({"params": _params_dict(cfg.base_params), "rows": rows}, indent=2) + "\n"

    header = "n,beta,e0,shift,e_total"
    if cfg.numeric:
        header += ",fd_eigenvalue,rel_gap"
    lines = [header]
    for row in rows:
        e0_s, shift_s, total_s = _consistent_total(row["e0"], row["shift"])
        fields = [str(row["n"]), _f(row["beta"]), e0_s, shift_s, total_s]
        if cfg.numeric:
            fields += [_f(row["fd_eigenvalue"]), _f(row["rel_gap"])]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def cmd_sweep(cfg: RunConfig) -> str:
    """Continuous-n energy curves, one per beta, grouped by beta."""
    rows = []
    for beta in cfg.betas:
        params = replace(cfg.base_params, beta=beta)
        for n in cfg.n_grid:
            e0, shift = box.energy_terms(float(n), params)
            rows.append({"n": float(n), "beta": beta, "e0": e0, "shift": shift,
                         "e_total": e0 + shift})

    if cfg.fmt == "json":
        return json.dumps({"params": _params_dict(cfg.base_params), "rows": rows}, indent=2) + "\n"

    lines = ["n,beta,e0,shift,e_total"]
    for row in rows:
        e0_s, shift_s, total_s = _consistent_total(row["e0"], row["shift"])
        lines.append(",".join([_f(row["n"]), _f(row["beta"]), e0_s, shift_s, total_s]))
    return "\n".join(lines) + "\n"


def cmd_momentum(cfg: RunConfig) -> str:
    """Eigenfunction samples plus a per-p header of k_exact, k_pert, amplitude."""
    beta = cfg.betas[0]
    params = replace(cfg.base_params, beta=beta)
    modes = []
    skipped = []
    for p in cfg.p_values:
        try:
            mode = momentum.momentum_mode(p, params)
        except OutsideFirstOrderDomain as exc:
            skipped.append((p, str(exc)))
            continue
        sol = momentum.dispersion_solve(p, params)
        u = momentum.eigenfunction_value(p, cfg.x_grid, params)
        modes.append({"p": p, "k_exact": sol.k_exact, "k_pert": sol.k_pert,
                      "amplitude": mode.amplitude, "u": u})
    for p, message in skipped:
        print(f"warning: skipping p={p!r}: {message}", file=sys.stderr)
    if not modes:
        raise ConfigError("no momentum value satisfies the first-order domain guard "
                          "1 - 3*beta*p^2 > 0")

    if cfg.fmt == "json":
        payload = {"params": _params_dict(cfg.base_params) | {"beta": beta}, "modes": []}
        for m in modes:
            payload["modes"].append({
                "p": m["p"],
                "k_exact": m["k_exact"],
                "k_pert": m["k_pert"],
                "amplitude": m["amplitude"],
                "x": [float(x) for x in cfg.x_grid],
                "re_u": [float(v) for v in m["u"].real],
                "im_u": [float(v) for v in m["u"].imag],
                "abs_u": [float(v) for v in np.abs(m["u"])],
            })
        return json.dumps(payload, indent=2) + "\n"

    lines = [f"# params: hbar={_f(params.hbar)} mass={_f(params.mass)} "
             f"width={_f(params.box_width)} beta={_f(beta)} units={params.units}"]
    for m in modes:
        lines.append(f"# p={_f(m['p'])} k_exact={_f(m['k_exact'])} "
                     f"k_pert={_f(m['k_pert'])} amplitude={_f(m['amplitude'])}")
    lines.append("p,x,re_u,im_u,abs_u")
    for m in modes:
        u = m["u"]
        for x, re_v, im_v, abs_v in zip(cfg.x_grid, u.real, u.imag, np.abs(u)):
            lines.append(",".join([_f(m["p"]), _f(x), _f(re_v), _f(im_v), _f(abs_v)]))
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    """Run the check suite; exit 0 iff every check passes."""
    results = verify.run_all(quick=cfg.quick, fault_spectrum=cfg.perturb_spectrum)
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.name:<{width}}  worst {r.worst:.3e}  threshold {r.threshold:.3e}"
        if r.detail:
            line += f"  [{r.detail}]"
        lines.append(line)
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", 0 if passed == len(results) else 1


def _write_output(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode("utf-8"))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if cfg.command == "verify":
            text, code = cmd_verify(cfg)
            _write_output(text, cfg.out)
            return code
        if cfg.command == "spectrum":
            text = cmd_spectrum(cfg)
        elif cfg.command == "sweep":
            text = cmd_sweep(cfg)
        else:
            text = cmd_momentum(cfg)
        _write_output(text, cfg.out)
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
