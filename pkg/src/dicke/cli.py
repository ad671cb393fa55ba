"""Command-line driver for parameter sweeps and report files.

Commands: critical, spectrum, compare-poles, exactdiag, entropy,
plotdata.  A run is specified by a flat TOML config file (--config),
overridden by command-line flags; flags win.  Sweeps use
--sweep name=start:stop:count (one or two axes).  Records are emitted
in deterministic grid order as CSV (RFC-4180) or JSON lines, floats
with 17 significant digits, so identical configs give byte-identical
files at any worker count.

Exit codes: 0 success, 2 usage/config error, 3 internal consistency
failure, 4 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import multiprocessing
import os
import sys
from dataclasses import replace

import numpy as np

from . import entanglement, exactdiag, meanfield
from .exactdiag import CutoffPolicy, DimensionCapError, TruncationCapError
from .meanfield import PoleError
from .params import ModelParams, validation_errors

USAGE_EXIT = 2
CONSISTENCY_EXIT = 3
RESOURCE_EXIT = 4

CONSISTENCY_TOL = 1e-8


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------- config

_SWEEPABLE = ("omega0", "Omega", "g1", "g2", "lambda", "beta")
_FIELD_FOR = {"lambda": "lam"}


def _load_config(path: str) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"config file {path}: {err}")


def _parse_beta(raw) -> float | None:
    if raw is None or raw == "zero-temperature":
        return None
    value = float(raw)
    if not value > 0:
        raise ConfigError("beta must be positive or the string 'zero-temperature'")
    return value


def _parse_sweep(spec: str):
    try:
        name, rng = spec.split("=", 1)
        start, stop, count = rng.split(":")
        name = name.strip()
        values = np.linspace(float(start), float(stop), int(count))
    except (ValueError, TypeError):
        raise ConfigError(f"bad sweep spec {spec!r}; expected name=start:stop:count")
    if name not in _SWEEPABLE:
        raise ConfigError(f"cannot sweep {name!r}; choose one of {', '.join(_SWEEPABLE)}")
    if len(values) < 1:
        raise ConfigError("sweep needs at least one point")
    return name, values


def _parse_atom_list(raw) -> list[int]:
    if isinstance(raw, int):
        atoms = [raw]
    elif isinstance(raw, list):
        atoms = [int(v) for v in raw]
    else:
        try:
            atoms = [int(part) for part in str(raw).split(",") if part.strip()]
        except ValueError:
            raise ConfigError(f"bad n-atoms value {raw!r}; expected an integer or comma list")
    if not atoms or any(n < 1 for n in atoms):
        raise ConfigError("n-atoms entries must be positive integers")
    return atoms


class _Resolved:
    """Config values merged with flag overrides; flags win."""

    def __init__(self, args, config: dict):
        self._args = args
        self._config = config

    def get(self, key: str, default=None):
        flag = getattr(self._args, key.replace("-", "_"), None)
        if flag is not None:
            return flag
        if key in self._config:
            return self._config[key]
        return default

    def beta(self):
        raw = self.get("beta")
        return _parse_beta(raw), raw is not None

    def base_params(self) -> tuple[ModelParams, bool]:
        beta, beta_given = self.beta()
        atoms = _parse_atom_list(self.get("n-atoms", 1))
        params = ModelParams(
            omega0=float(self.get("omega0", 1.0)),
            Omega=float(self.get("Omega", 1.0)),
            g1=float(self.get("g1", 0.0)),
            g2=float(self.get("g2", 0.0)),
            lam=float(self.get("lambda", 0.0)),
            n_atoms=atoms[0],
            beta=beta,
        )
        errors = validation_errors(params)
        if errors:
            raise ConfigError("; ".join(errors))
        return params, beta_given

    def atom_list(self) -> list[int]:
        return _parse_atom_list(self.get("n-atoms", 1))

    def sweeps(self):
        specs = self._args.sweep or self._config.get("sweep") or []
        if isinstance(specs, str):
            specs = [specs]
        axes = [_parse_sweep(s) for s in specs]
        if len(axes) > 2:
            raise ConfigError("at most two sweep axes")
        names = [a[0] for a in axes]
        if len(set(names)) != len(names):
            raise ConfigError("sweep axes must be distinct")
        return axes

    def workers(self) -> int:
        env = os.environ.get("DICKE_WORKERS")
        try:
            if env is not None:
                return max(1, int(env))
            return max(1, int(self.get("workers", 1)))
        except ValueError:
            raise ConfigError("worker count must be an integer")

    def policy(self) -> CutoffPolicy:
        return CutoffPolicy(
            start_cap=int(self.get("start-cap", CutoffPolicy.start_cap)),
            hard_cap=int(self.get("hard-cap", CutoffPolicy.hard_cap)),
            tail_tol=float(self.get("tail-tol", CutoffPolicy.tail_tol)),
        )


def _grid_points(base: ModelParams, axes) -> list[ModelParams]:
    """Row-major enumeration of the sweep grid as parameter records."""
    points = [base]
    for name, values in axes:
        field = _FIELD_FOR.get(name, name)
        expanded = []
        for p in points:
            for v in values:
                value = _parse_beta(v) if name == "beta" else float(v)
                expanded.append(replace(p, **{field: value}))
        points = expanded
    return points


# ---------------------------------------------------------------- records

def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _param_columns(p: ModelParams) -> dict:
    return {
        "omega0": p.omega0,
        "Omega": p.Omega,
        "g1": p.g1,
        "g2": p.g2,
        "lambda": p.lam,
        "n_atoms": p.n_atoms,
        "beta": "zero-temperature" if p.beta is None else p.beta,
    }


def _phase_label(beta: float | None, crit: meanfield.CriticalPoint) -> str:
    if crit.beta_c == "none":
        return "fluorescent"
    if crit.beta_c == "zero-temperature":
        return "critical" if beta is None else "fluorescent"
    if beta is None:
        return "super-radiant"
    if beta == crit.beta_c:
        return "critical"
    return "fluorescent" if beta < crit.beta_c else "super-radiant"


def _critical_record(task) -> dict:
    p, _ = task
    record = {"command": "critical"}
    record.update(_param_columns(p))
    closed = meanfield.critical_beta_closed(p, "general")
    numeric = meanfield.critical_beta_numeric(p)
    status = "ok" if closed.has_transition else "no-transition"
    if closed.is_finite and numeric.is_finite:
        if abs(closed.beta_c - numeric.beta_c) > CONSISTENCY_TOL * closed.beta_c:
            status = "consistency-fail"
    elif closed.beta_c != numeric.beta_c:
        status = "consistency-fail"
    record.update(
        beta_c_closed=closed.beta_c,
        beta_c_numeric=numeric.beta_c,
        residual_closed=closed.condition_residual,
        residual_numeric=numeric.condition_residual,
        phase=_phase_label(p.beta, closed),
        status=status,
    )
    return record


def _spectrum_record(task) -> dict:
    p, options = task
    record = {"command": "spectrum"}
    record.update(_param_columns(p))
    blank = dict(
        beta_used="",
        e1_closed="",
        e2_closed="",
        residual_e1="",
        residual_e2="",
        roots_numeric="",
        max_residual_numeric="",
        exploratory="",
    )
    crit = meanfield.critical_beta_closed(p, "general")
    beta_given = options.get("beta_given", False)
    if not crit.has_transition and not beta_given:
        record.update(blank, status="no-transition")
        return record
    if beta_given:
        beta_used = p.beta
    else:
        beta_used = crit.beta_c if crit.is_finite else None
    try:
        numeric = meanfield.spectrum_roots(p, beta_used)
        record_beta = "zero-temperature" if beta_used is None else beta_used
        if crit.has_transition:
            closed = meanfield.spectrum_roots_closed(p)
            e1, e2 = closed.roots
            r1, r2 = closed.residuals
        else:
            e1 = e2 = r1 = r2 = ""
        record.update(
            beta_used=record_beta,
            e1_closed=e1,
            e2_closed=e2,
            residual_e1=r1,
            residual_e2=r2,
            roots_numeric=";".join(_fmt(r) for r in numeric.roots),
            max_residual_numeric=max(numeric.residuals) if numeric.residuals else 0.0,
            exploratory="true" if numeric.exploratory else "false",
            status="ok",
        )
    except PoleError:
        record.update(blank, status="pole")
        record["beta_used"] = "zero-temperature" if beta_used is None else beta_used
    return record


def _exactdiag_record(task) -> dict:
    p, options = task
    policy = CutoffPolicy(**options["policy"])
    record = {"command": "exactdiag"}
    record.update(_param_columns(p))
    blank = dict(
        n_max="",
        fock_tail="",
        energy="",
        free_energy_per_atom="",
        order_parameter="",
        mean_Jz_per_atom="",
        partition_function_log="",
    )
    try:
        if p.beta is None:
            state, n_max, tail = exactdiag.converged_ground(p, policy)
            occ = exactdiag.fock_labels(n_max, p.n_atoms)
            mvals = exactdiag.jz_labels(n_max, p.n_atoms)
            density = state.amplitudes**2
            record.update(
                n_max=n_max,
                fock_tail=tail,
                energy=state.energy,
                free_energy_per_atom=state.energy / p.n_atoms,
                order_parameter=float(density @ occ) / p.n_atoms,
                mean_Jz_per_atom=float(density @ mvals) / p.n_atoms,
                partition_function_log="",
                status="ok",
            )
            return record
        n_max = exactdiag.initial_cutoff(p, policy)
        while True:
            h = exactdiag.build_hamiltonian(p, n_max)
            obs = exactdiag.thermal_observables(h, p.beta)
            if obs.fock_tail <= policy.tail_tol or n_max >= policy.hard_cap:
                break
            n_max = min(2 * n_max, policy.hard_cap)
        status = "ok" if obs.fock_tail <= policy.tail_tol else "truncation-capped"
        record.update(
            n_max=n_max,
            fock_tail=obs.fock_tail,
            energy="",
            free_energy_per_atom=obs.free_energy_per_atom,
            order_parameter=obs.order_parameter,
            mean_Jz_per_atom=obs.mean_Jz_per_atom,
            partition_function_log=obs.partition_function_log,
            status=status,
        )
    except (TruncationCapError, DimensionCapError):
        record.update(blank, status="truncation-capped")
    return record


def _entropy_record(task) -> dict:
    p, options = task
    policy = CutoffPolicy(**options["policy"])
    record = {"command": "entropy"}
    record.update(_param_columns(p))
    try:
        state, n_max, tail = exactdiag.converged_ground(p, policy)
        alpha = entanglement.dicke_amplitude_matrix(state, n_max, p.n_atoms)
        report = entanglement.schmidt_decompose(alpha.reshape(-1), (p.n_atoms + 1, n_max + 1))
        record.update(
            n_max=n_max,
            fock_tail=tail,
            entropy=report.von_neumann_entropy,
            schmidt_number=report.schmidt_number,
            status="ok",
        )
    except (TruncationCapError, DimensionCapError):
        record.update(n_max="", fock_tail="", entropy="", schmidt_number="", status="truncation-capped")
    return record


_RECORD_FN = {
    "critical": _critical_record,
    "spectrum": _spectrum_record,
    "exactdiag": _exactdiag_record,
    "entropy": _entropy_record,
}


def _eval_task(task):
    command, point_task = task
    return _RECORD_FN[command](point_task)


def _map_tasks(tasks, workers: int) -> list[dict]:
    if workers <= 1 or len(tasks) <= 1:
        return [_eval_task(t) for t in tasks]
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.map(_eval_task, tasks)


# --------------------------------------------------------------- emission

def _write_records(records: list[dict], out: str | None, fmt: str) -> None:
    if not records:
        raise ConfigError("no records produced")
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        header = list(records[0].keys())
        writer.writerow(header)
        for record in records:
            writer.writerow([_fmt(record[k]) for k in header])
        text = buffer.getvalue()
    elif fmt == "json":
        lines = [json.dumps(_jsonable(record), separators=(",", ":")) for record in records]
        text = "\n".join(lines) + "\n"
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _records_exit(records: list[dict]) -> int:
    statuses = {r.get("status") for r in records}
    if "consistency-fail" in statuses:
        return CONSISTENCY_EXIT
    if "truncation-capped" in statuses:
        return RESOURCE_EXIT
    return 0


# --------------------------------------------------------------- plotdata

def _read_records(path: str) -> list[dict]:
    if not os.path.exists(path):
        raise ConfigError(f"records file not found: {path}")
    records = []
    if path.endswith(".json") or path.endswith(".jsonl"):
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    records.append(json.loads(line))
    else:
        with open(path, encoding="utf-8", newline="") as fh:
            records.extend(csv.DictReader(fh))
    return records


def _numeric_rows(records: list[dict], names: list[str]) -> list[tuple[float, ...]]:
    """Rows with every requested column parsed as a float.

    Records carrying a non-numeric sentinel ("", "none") in any
    requested column are skipped, as a plotting tool would skip them.
    """
    for name in names:
        if any(name not in record for record in records):
            raise ConfigError(f"column {name!r} missing from records")
    rows = []
    for record in records:
        try:
            rows.append(tuple(float(record[name]) for name in names))
        except (TypeError, ValueError):
            continue
    if not rows:
        raise ConfigError(f"no record has numeric values in all of {', '.join(names)}")
    return rows


def _plotdata(args) -> int:
    records = _read_records(args.records)
    if not records:
        raise ConfigError("empty record set")
    commands = {r.get("command", "") for r in records}
    if len(commands) != 1:
        raise ConfigError(f"mixed-command record set: {sorted(commands)}")
    if args.out is None:
        raise ConfigError("plotdata needs --out BASE")
    names = [args.x, args.y] + ([args.z] if args.z else [])
    rows = _numeric_rows(records, names)
    xs = [row[0] for row in rows]
    ys = [row[1] for row in rows]
    zs = [row[2] for row in rows] if args.z else None
    kind = args.kind
    if kind == "auto":
        kind = "heatmap" if zs is not None else "line"
    if kind == "heatmap" and zs is None:
        raise ConfigError("heatmap needs --z")

    dat_path = args.out + ".dat"
    with open(dat_path, "w", encoding="utf-8") as fh:
        if kind == "line":
            fh.write(f"# {args.x} {args.y}\n")
            for x, y in zip(xs, ys):
                fh.write(f"{_fmt(x)} {_fmt(y)}\n")
        else:
            fh.write(f"# {args.x} {args.y} {args.z}\n")
            previous = None
            for x, y, z in zip(xs, ys, zs):
                if previous is not None and x != previous:
                    fh.write("\n")
                fh.write(f"{_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
                previous = x

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "dicke"
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if kind == "line":
        ax.plot(xs, ys, marker=".", lw=1.0)
        ax.set_xlabel(args.x)
        ax.set_ylabel(args.y)
    else:
        x_vals = sorted(set(xs))
        y_vals = sorted(set(ys))
        grid = np.full((len(y_vals), len(x_vals)), np.nan)
        xi = {v: i for i, v in enumerate(x_vals)}
        yi = {v: i for i, v in enumerate(y_vals)}
        for x, y, z in zip(xs, ys, zs):
            grid[yi[y], xi[x]] = z
        mesh = ax.pcolormesh(x_vals, y_vals, grid, shading="nearest")
        fig.colorbar(mesh, ax=ax, label=args.z)
        ax.set_xlabel(args.x)
        ax.set_ylabel(args.y)
    fig.tight_layout()
    fig.savefig(args.out + ".svg", format="svg", metadata={"Date": None})
    plt.close(fig)
    return 0


# ---------------------------------------------------------------- driver

def _cmd_sweep(args, command: str) -> int:
    config = _load_config(args.config) if args.config else {}
    resolved = _Resolved(args, config)
    base, beta_given = resolved.base_params()
    axes = resolved.sweeps()
    workers = resolved.workers()
    fmt = resolved.get("format", "csv")

    if command in ("critical", "spectrum"):
        options = {"beta_given": beta_given}
        tasks = [(command, (p, options)) for p in _grid_points(base, axes)]
    else:
        options = {"policy": dataclasses.asdict(resolved.policy())}
        tasks = []
        for n in resolved.atom_list():
            base_n = replace(base, n_atoms=n)
            tasks.extend((command, (p, options)) for p in _grid_points(base_n, axes))
    records = _map_tasks(tasks, workers)
    _write_records(records, resolved.get("out"), fmt)
    return _records_exit(records)


def _cmd_compare_poles(args) -> int:
    config = _load_config(args.config) if args.config else {}
    resolved = _Resolved(args, config)
    base, _ = resolved.base_params()
    grid_spec = resolved.get("omega-grid", "0.0:25.0:501")
    try:
        start, stop, count = grid_spec.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
    except (ValueError, AttributeError):
        raise ConfigError(f"bad omega-grid {grid_spec!r}; expected start:stop:count")
    lambdas = resolved.get("lambdas", [-1.0, 0.0, 1.0, 10.0])
    if not isinstance(lambdas, (list, tuple)):
        raise ConfigError("lambdas must be a list")
    report = meanfield.compare_poles(base, grid, lambdas=tuple(float(v) for v in lambdas))
    payload = _jsonable(dataclasses.asdict(report))
    payload["passed"] = report.passed
    text = json.dumps(payload, separators=(",", ":")) + "\n"
    out = resolved.get("out")
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report.passed else CONSISTENCY_EXIT


def _add_common(parser: argparse.ArgumentParser, with_atoms: bool = True) -> None:
    parser.add_argument("--config", help="flat TOML config file")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), help="record format (default csv)")
    parser.add_argument("--workers", type=int, help="worker processes (default 1)")
    parser.add_argument("--omega0", type=float, help="boson mode energy")
    parser.add_argument("--Omega", type=float, help="atomic level splitting")
    parser.add_argument("--g1", type=float, help="rotating coupling")
    parser.add_argument("--g2", type=float, help="counter-rotating coupling")
    parser.add_argument("--lambda", dest="lambda", type=float, help="dipole-dipole strength")
    parser.add_argument("--beta", help="inverse temperature or 'zero-temperature'")
    parser.add_argument("--sweep", action="append", help="axis spec name=start:stop:count (repeatable)")
    if with_atoms:
        parser.add_argument("--n-atoms", help="atom count, or comma list for exactdiag/entropy")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicke",
        description="Super-radiant criticality, spectra, and pole structure of the full Dicke model",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)
    for name in ("critical", "spectrum", "exactdiag", "entropy"):
        p = sub.add_parser(name)
        _add_common(p)
        if name in ("exactdiag", "entropy"):
            p.add_argument("--start-cap", type=int, help="initial Fock cutoff bound")
            p.add_argument("--hard-cap", type=int, help="maximum Fock cutoff")
            p.add_argument("--tail-tol", type=float, help="top-level occupancy tolerance")
    p = sub.add_parser("compare-poles")
    _add_common(p)
    p.add_argument("--omega-grid", help="frequency grid start:stop:count")
    p = sub.add_parser("plotdata")
    p.add_argument("--records", required=True, help="CSV or JSONL records from a prior command")
    p.add_argument("--out", help="output basename for .dat and .svg")
    p.add_argument("--x", required=True, help="x column")
    p.add_argument("--y", required=True, help="y column")
    p.add_argument("--z", help="z column (heatmap)")
    p.add_argument("--kind", choices=("auto", "line", "heatmap"), default="auto")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.cmd == "plotdata":
            return _plotdata(args)
        if args.cmd == "compare-poles":
            return _cmd_compare_poles(args)
        return _cmd_sweep(args, args.cmd)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except (DimensionCapError, TruncationCapError) as err:
        print(f"resource cap: {err}", file=sys.stderr)
        return RESOURCE_EXIT


if __name__ == "__main__":
    sys.exit(main())
