"""Command-line interface.

``gale [--config PATH] [--seed N] [--out PATH] [--dump-config] <command> ...``

Commands write CSV (header row, 9 significant digits, LF endings) to ``--out``
or standard output; ``simulate`` writes one trace file per vehicle into the
``--out`` directory.  Exit codes: 0 success, 1 failed validation, 2
configuration error, 3 numeric or convergence error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from gale import config as cfgmod
from gale import validation
from gale.boundary_layer import Closure, SeaStateInput, solve_friction_velocity
from gale.engine import Terrain, WindEngine
from gale.errors import ConfigurationError, ConvergenceError, DomainError, GaleError
from gale.gusts import write_schedule
from gale.spectra import (TWO_PI, Family, ForristallParams, HarrisParams, OchiShinParams,
                          SpectrumModel, VonKarmanParams, eval_psd)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

SEED_ENV = "GALE_SEED"
U64_MAX = 2**64 - 1

PRESETS = {
    # the over-water snapshot setup: u10 = 12.8 m/s, c_p = 7.5 m/s, z = 2.5 m, 100 m square
    "reference-sea": dict(environment=dict(terrain=Terrain.OVER_WATER, v_air=12.8,
                                           cp_ratio=7.5 / 12.8),
                          output=dict(field_altitude=2.5, field_extent=100.0, field_spacing=1.0)),
}


def fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "{:.9g}".format(float(v))


def write_csv(stream, header, rows):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


@contextlib.contextmanager
def open_output(path):
    """Yield a text stream for ``path`` (standard output when ``None`` or ``-``)."""
    if path is None or path == "-":
        buf = io.StringIO()
        yield buf
        sys.stdout.write(buf.getvalue())
        sys.stdout.flush()
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        yield fh


def parse_seed(text, source):
    try:
        seed = int(text, 0) if isinstance(text, str) else int(text)
    except ValueError:
        raise ConfigurationError(f"{source}: seed must be an integer, got {text!r}") from None
    if not 0 <= seed <= U64_MAX:
        raise ConfigurationError(f"{source}: seed must fit in 64 unsigned bits")
    return seed


def resolve_config(args):
    """Load the run configuration and apply the seed precedence.

    ``--seed`` beats ``GALE_SEED``, which beats ``grid.seed`` in the file.
    """
    cfg = cfgmod.load(args.config) if args.config else cfgmod.RunConfig()
    preset = getattr(args, "preset", None)
    if preset:
        p = PRESETS[preset]
        cfg = replace(cfg, environment=replace(cfg.environment, **p["environment"]),
                      output=replace(cfg.output, **p["output"]))
    if args.seed is not None:
        cfg = cfgmod.with_seed(cfg, parse_seed(args.seed, "--seed"))
    elif os.environ.get(SEED_ENV, "").strip():
        cfg = cfgmod.with_seed(cfg, parse_seed(os.environ[SEED_ENV].strip(), SEED_ENV))
    return cfg


# -- commands ---------------------------------------------------------------

def spectrum_model(args):
    fam = Family(args.model)
    if fam.name.startswith("VK_"):
        params = VonKarmanParams.from_si(args.u, args.z, args.b)
    elif fam is Family.HARRIS:
        params = HarrisParams(u10=args.u, L=args.L, C=args.C)
    elif fam is Family.FORRISTALL:
        params = ForristallParams(z=args.z, u_z=args.u, u_star=args.u_star, A_f=args.A, B_f=args.B)
    else:
        params = OchiShinParams(z=args.z, u_z=args.u, u_star=args.u_star)
    return SpectrumModel(fam, params)


def cmd_spectrum(args, cfg):
    if not (args.omega_min > 0 and args.omega_max > args.omega_min):
        raise ConfigurationError("need 0 < --omega-min < --omega-max")
    if args.points < 2:
        raise ConfigurationError("--points must be at least 2")
    model = spectrum_model(args)
    if args.spacing == "log":
        omega = np.geomspace(args.omega_min, args.omega_max, args.points)
    else:
        omega = np.linspace(args.omega_min, args.omega_max, args.points)
    S = np.asarray(eval_psd(model, omega))
    with open_output(args.out) as fh:
        write_csv(fh, ("omega", "f", "S"), zip(omega, omega / TWO_PI, S))
    return EXIT_OK


def cmd_friction(args, cfg):
    closures = list(Closure) if args.closure == "both" else [Closure(args.closure)]
    if not args.cp_ratio > 0:
        raise ConfigurationError("--cp-ratio must be positive")
    rows = []
    for c in closures:
        sol = solve_friction_velocity(SeaStateInput(u10=args.u10, c_p=args.cp_ratio * args.u10,
                                                    closure=c, epsilon=args.epsilon,
                                                    max_iter=args.max_iter))
        rows.append((c.value, sol.u_star, sol.z0, sol.C, sol.iterations))
    with open_output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("closure", "u_star", "z0", "C", "iterations"))
        for name, *vals in rows:
            w.writerow([name] + [fmt(v) for v in vals])
    return EXIT_OK


def time_grid(out):
    n = int(round(out.duration * out.sample_rate))
    return np.arange(n) / out.sample_rate


def cmd_timeseries(args, cfg):
    engine = WindEngine(cfg.environment)
    p = cfg.output.position
    t = time_grid(cfg.output)
    rows = ((ti,) + engine.wind_frame(p, ti) for ti in t)
    with open_output(args.out) as fh:
        write_csv(fh, ("t", "v_lon", "v_lat", "v_vert", "omega_roll", "omega_pitch",
                       "omega_yaw"), rows)
    return EXIT_OK


def cmd_field(args, cfg):
    out = cfg.output
    engine = WindEngine(cfg.environment)
    n = int(round(out.field_extent / out.field_spacing)) + 1
    axis = np.arange(n) * out.field_spacing
    X, Y = np.meshgrid(axis, axis, indexing="xy")
    fields = engine.fields_at(out.field_altitude)
    if fields is None:
        v = np.zeros_like(X)
    else:
        v = fields[out.field_component].sample_points(X, Y, out.field_time)
    with open_output(args.out) as fh:
        write_csv(fh, ("x", "y", "v_turb"), zip(X.ravel(), Y.ravel(), v.ravel()))
    return EXIT_OK


def load_trajectories(path):
    """Read ``vehicle,t,x,y,z`` rows into per-vehicle arrays sorted by time."""
    data = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        need = {"vehicle", "t", "x", "y", "z"}
        if not need <= set(reader.fieldnames or ()):
            raise ConfigurationError(f"trajectory {path} needs columns {sorted(need)}")
        for row in reader:
            try:
                vid = int(row["vehicle"])
                data.setdefault(vid, []).append([float(row[k]) for k in ("t", "x", "y", "z")])
            except ValueError:
                raise ConfigurationError(f"bad trajectory row in {path}: {row}") from None
    if not data:
        raise ConfigurationError(f"trajectory {path} has no rows")
    return [np.array(sorted(data[vid])) for vid in sorted(data)]


def vehicle_paths(cfg, t):
    """Positions of every vehicle at every time, shape ``(n_vehicles, len(t), 3)``."""
    out = cfg.output
    if out.trajectory:
        tracks = load_trajectories(out.trajectory)
        return np.stack([np.column_stack([np.interp(t, a[:, 0], a[:, k]) for k in (1, 2, 3)])
                         for a in tracks])
    if not out.vehicles:
        raise ConfigurationError("output.vehicles is empty and no trajectory was given")
    return np.stack([np.tile(np.asarray(v, dtype=np.float64), (len(t), 1))
                     for v in out.vehicles])


SIM_HEADER = ("t", "x", "y", "z", "v_x", "v_y", "v_z", "omega_roll", "omega_pitch",
              "omega_yaw", "gust_active")


def simulate(cfg, threads=1):
    """Per-vehicle trace rows; the thread count never changes the values."""
    engine = WindEngine(cfg.environment)
    t = time_grid(cfg.output)
    paths = vehicle_paths(cfg, t)
    tasks = [(tuple(paths[v, i]), float(t[i])) for v in range(paths.shape[0])
             for i in range(len(t))]

    def run(task):
        p, ti = task
        s = engine.sample(p, ti)
        return (ti,) + p + s.v_air_vec + s.omega_air_vec + (engine.gust_active(p, ti),)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(run, tasks, chunksize=64))
    else:
        rows = [run(task) for task in tasks]
    n = len(t)
    return [rows[v * n:(v + 1) * n] for v in range(paths.shape[0])]


def cmd_simulate(args, cfg):
    if args.threads < 1:
        raise ConfigurationError("--threads must be at least 1")
    traces = simulate(cfg, threads=args.threads)
    out_dir = args.out or cfg.output.dir
    os.makedirs(out_dir, exist_ok=True)
    for k, rows in enumerate(traces):
        with open(os.path.join(out_dir, f"vehicle_{k:02d}.csv"), "w", newline="",
                  encoding="utf-8") as fh:
            write_csv(fh, SIM_HEADER, rows)
    return EXIT_OK


def cmd_gusts(args, cfg):
    engine = WindEngine(cfg.environment)
    with open_output(args.out) as fh:
        write_schedule(engine.schedule, fh)
    return EXIT_OK


def cmd_validate(args, cfg):
    seed = cfg.environment.grid.seed
    results = validation.run_all(seed=seed)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: value={r.value:.6g} threshold={r.threshold:.6g} {r.detail}",
              file=sys.stderr)
    summary = {"passed": all(r.passed for r in results), "seed": seed,
               "checks": [r.as_dict() for r in results]}
    with open_output(args.out) as fh:
        fh.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if summary["passed"] else EXIT_FAILED


COMMANDS = {
    "spectrum": cmd_spectrum,
    "friction": cmd_friction,
    "timeseries": cmd_timeseries,
    "field": cmd_field,
    "simulate": cmd_simulate,
    "gusts": cmd_gusts,
    "validate": cmd_validate,
}


# -- parser -----------------------------------------------------------------

def _global_flags(p, suppress):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", metavar="PATH", default=d, help="run configuration file")
    p.add_argument("--seed", metavar="U64", default=d, help="realization seed")
    p.add_argument("--out", metavar="PATH", default=d, help="output file or directory")
    p.add_argument("--dump-config", action="store_true",
                   default=argparse.SUPPRESS if suppress else False,
                   help="print the effective configuration and exit")


def build_parser():
    parser = argparse.ArgumentParser(prog="gale", description="Low-altitude wind simulation")
    _global_flags(parser, suppress=False)
    # lets the global flags also follow the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", metavar="command")

    sp = sub.add_parser("spectrum", parents=[common], help="tabulate a PSD")
    sp.add_argument("--model", required=True, choices=[f.value for f in Family])
    sp.add_argument("--u", type=float, default=10.0,
                    help="wind speed (m/s): u20 for von Karman, u10 for Harris, u(z) otherwise")
    sp.add_argument("--z", type=float, default=10.0, help="altitude (m)")
    sp.add_argument("--b", type=float, default=0.34, help="wingspan (m)")
    sp.add_argument("--L", type=float, default=60.0, help="Harris length scale (m)")
    sp.add_argument("--C", type=float, default=0.002, help="Harris drag coefficient")
    sp.add_argument("--u-star", type=float, default=None, help="friction velocity (m/s)")
    sp.add_argument("--A", type=float, default=42.0, help="Forristall A")
    sp.add_argument("--B", type=float, default=63.0, help="Forristall B")
    sp.add_argument("--omega-min", type=float, default=TWO_PI * 0.01)
    sp.add_argument("--omega-max", type=float, default=TWO_PI * 8.0)
    sp.add_argument("--points", type=int, default=200)
    sp.add_argument("--spacing", choices=("log", "linear"), default="log")

    fp = sub.add_parser("friction", parents=[common], help="solve for the friction velocity")
    fp.add_argument("--u10", type=float, default=10.0)
    fp.add_argument("--cp-ratio", type=float, default=0.5, help="c_p / u10")
    fp.add_argument("--closure", choices=[c.value for c in Closure] + ["both"], default="volkov")
    fp.add_argument("--epsilon", type=float, default=1e-3)
    fp.add_argument("--max-iter", type=int, default=100)

    sub.add_parser("timeseries", parents=[common], help="point time series")
    fd = sub.add_parser("field", parents=[common], help="horizontal turbulence snapshot")
    fd.add_argument("--preset", choices=sorted(PRESETS), default=None)
    sm = sub.add_parser("simulate", parents=[common], help="multi-vehicle traces")
    sm.add_argument("--threads", type=int, default=1)
    sub.add_parser("gusts", parents=[common], help="export the gust schedule")
    sub.add_parser("validate", parents=[common], help="run the self-checks")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            cfg = resolve_config(args)
            if args.dump_config:
                with open_output(args.out) as fh:
                    fh.write(cfgmod.dumps(cfg))
                return EXIT_OK
            if args.command is None:
                parser.print_usage(sys.stderr)
                print("gale: error: a command is required", file=sys.stderr)
                return EXIT_CONFIG
            return COMMANDS[args.command](args, cfg)
    except ConvergenceError as exc:
        print(f"gale: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigurationError, DomainError, ValueError) as exc:
        print(f"gale: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (GaleError, ArithmeticError, FloatingPointError) as exc:
        print(f"gale: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"gale: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
