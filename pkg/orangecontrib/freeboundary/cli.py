"""Command line entry point.

Usage::

    freeboundary simulate --config run.json --out runs/a
    freeboundary threshold --config run.json --resume runs/a/threshold_checkpoint.json
    freeboundary sweep --config sweep.json --jobs 4

Exit codes: 0 success, 2 numerical failure, 3 configuration error, 4 no
result (no bracket, no threshold or no witness).
"""
import argparse
import logging
import os
import sys

import numpy as np

from orangecontrib.freeboundary.core import (
    InitialDataException, ParamsException, Regime, RegimeException, classify_regime,
    coexistence_limit, lambda_threshold
)
from orangecontrib.freeboundary.solver import SolverException, simulate
from orangecontrib.freeboundary.classify import (
    ClassifyException, NoBracketException, NonMonotoneException, NoThresholdException,
    SWEEP_COLUMNS, ERROR, UndeterminedException, build_plan, classify_run, find_mu_star, sweep
)
from orangecontrib.freeboundary.steady import (
    BarrierOrderException, HalfLineGrid, NewtonException, SteadyException, build_barriers,
    check_sandwich, solve_steady_system
)
from orangecontrib.freeboundary.odelimits import (
    IterationException, OdeException, iterate_bounds, integrate_ode
)
from orangecontrib.freeboundary.barriers import (
    NoWitnessException, SearchSpec, SupersolutionException, certificate, search_mu0
)
from orangecontrib.freeboundary.io import (
    CheckpointException, ConfigException, RunConfig, load_checkpoint, read_json, read_run,
    save_checkpoint, write_csv, write_json, write_rows, write_run
)
from orangecontrib.freeboundary.io.records import (
    CHECKPOINT_FILE, CLASSIFICATION_FILE
)
from orangecontrib.freeboundary.utils.plots import emit_plots


log = logging.getLogger(__name__)




class ExitCode:
    OK = 0
    NUMERIC = 2
    CONFIG = 3
    NO_RESULT = 4




COMMANDS = ("simulate", "classify", "threshold", "steady", "ode", "barrier", "sweep")

HELP = {
    "simulate": "run one simulation and classify it",
    "classify": "classify a stored run",
    "threshold": "bracket the critical mu by bisection",
    "steady": "barrier profiles and the steady state",
    "ode": "spatially homogeneous dynamics and the exclusion iteration",
    "barrier": "search a certified small-mu vanishing bound",
    "sweep": "classify a mu x s0 grid of runs",
}

THRESHOLD_CHECKPOINT = "threshold_checkpoint.json"




def _plots_wanted(args, config):
    return args.plots or bool(config["output"]["plots"])


def _plot_dir(out_dir):
    return os.path.join(out_dir, "plots")


def _tolerances(config):
    classify = config["classify"]
    return classify["tol_vanish"], classify["tol_stall"]


def cmd_simulate(config, args):
    kind, params, grid = config.kind, config.params, config.grid
    init = config.init_spec.build(kind, params.s0)
    out_dir = config.output_dir

    resume = None

    if args.resume is not None:
        resume = load_checkpoint(args.resume, config.config_hash(), init)

    try:
        record = simulate(params, kind, init, grid, resume=resume)

    except SolverException as e:
        if e.record is not None:
            write_run(e.record, out_dir, config.config_hash())

        log.error("Simulation failed: %s", e)
        return ExitCode.NUMERIC

    lam = lambda_threshold(params, kind)
    classification = classify_run(record, lam, *_tolerances(config))

    write_run(record, out_dir, config.config_hash())
    write_json(os.path.join(out_dir, CLASSIFICATION_FILE), classification.as_dict())
    save_checkpoint(record, os.path.join(out_dir, CHECKPOINT_FILE), config.config_hash())

    log.info("Verdict: %s", classification.verdict)

    if _plots_wanted(args, config):
        emit_plots(_plot_dir(out_dir), record=record, lam=lam)

    return ExitCode.OK


def cmd_classify(config, args):
    if args.run is None:
        raise ConfigException("classify needs --run <run directory>")

    record = read_run(args.run)
    lam = lambda_threshold(record.params, record.kind)
    classification = classify_run(record, lam, *_tolerances(config))

    out_dir = args.out if args.out is not None else args.run
    os.makedirs(out_dir, exist_ok=True)
    write_json(os.path.join(out_dir, CLASSIFICATION_FILE), classification.as_dict())

    log.info("Verdict: %s", classification.verdict)

    return ExitCode.OK


def cmd_threshold(config, args):
    kind, params, grid = config.kind, config.params, config.grid
    init = config.init_spec.build(kind, params.s0)
    group = config["threshold"]
    out_dir = config.output_dir

    os.makedirs(out_dir, exist_ok=True)
    checkpoint_path = os.path.join(out_dir, THRESHOLD_CHECKPOINT)

    history = None

    if args.resume is not None:
        saved = read_json(args.resume)

        if saved.get("config_hash") != config.threshold_hash():
            raise CheckpointException("Threshold checkpoint was written for a different configuration.")

        history = [(float(mu), verdict) for mu, verdict in saved["history"]]
        log.info("Resuming bisection with %d recorded probes", len(history))

    def on_probe(bracket):
        write_json(checkpoint_path, {"config_hash": config.threshold_hash(),
                                     "history": bracket.as_dict()["history"]})

    bracket = find_mu_star(params, kind, init, grid,
                           bracket0=(group["mu_lo"], group["mu_hi"]),
                           rel_tol=group["rel_tol"],
                           tol_vanish=config["classify"]["tol_vanish"],
                           tol_stall=config["classify"]["tol_stall"],
                           max_retries=group["max_retries"],
                           history=history, on_probe=on_probe)

    write_json(os.path.join(out_dir, "bracket.json"), bracket.as_dict())
    log.info("mu* in [%.6g, %.6g]", bracket.mu_lo, bracket.mu_hi)

    return ExitCode.OK


def cmd_steady(config, args):
    params = config.params
    group = config["steady"]
    out_dir = config.output_dir
    grid = HalfLineGrid(float(group["L"]), int(group["m"]))

    barriers = build_barriers(params, grid)
    u, v = solve_steady_system(params, grid, barriers)

    os.makedirs(out_dir, exist_ok=True)
    write_csv(os.path.join(out_dir, "barriers.csv"), barriers.COLUMNS, barriers.as_array())
    write_csv(os.path.join(out_dir, "steady_state.csv"), ("x", "u", "v"),
              np.column_stack((grid.x, u, v)))

    report = {"grid": grid.as_dict(), "cap_warnings": barriers.warnings}
    record = None

    if group["run"] is not None:
        record = read_run(group["run"])
        report["sandwich"] = check_sandwich(record, barriers, tuple(group["window"]), group["slack"])
        log.info("Sandwich %s", "passed" if report["sandwich"]["passed"] else "failed")

    write_json(os.path.join(out_dir, "steady.json"), report)

    if _plots_wanted(args, config):
        emit_plots(_plot_dir(out_dir), record=record, barriers=barriers, window=group["window"],
                   lam=lambda_threshold(params, config.kind) if record is not None else None)

    return ExitCode.OK


def cmd_ode(config, args):
    params = config.params
    group = config["ode"]
    out_dir = config.output_dir

    trajectory = integrate_ode(params, group["u0"], group["v0"], group["t_max"], group["dt"])

    os.makedirs(out_dir, exist_ok=True)
    write_csv(os.path.join(out_dir, "trajectory.csv"), trajectory.COLUMNS, trajectory.as_array())

    final = trajectory.final
    regime = classify_regime(params)
    report = {"regime": regime, "final": {"t": final.t, "u": final.u, "v": final.v}}

    limit = None

    try:
        limit = coexistence_limit(params)
        report["limit"] = list(limit)
        report["distance"] = max(abs(final.u - limit[0]), abs(final.v - limit[1]))
    except RegimeException as e:
        log.warning("%s", e)

    if regime == Regime.VWins:
        sequence = iterate_bounds(params.h, params.k, group["J"])
        write_csv(os.path.join(out_dir, "iteration.csv"), sequence.COLUMNS, sequence.as_array())
        report["iteration"] = sequence.summary()

    write_json(os.path.join(out_dir, "ode.json"), report)

    if _plots_wanted(args, config):
        emit_plots(_plot_dir(out_dir), trajectory=trajectory, limit=limit)

    return ExitCode.OK


def _search_spec(group):
    return SearchSpec(
        deltas=tuple(np.geomspace(group["delta_min"], group["delta_max"], group["n_delta"])),
        gammas=tuple(np.geomspace(group["gamma_min"], group["gamma_max"], group["n_gamma"])),
        k_factors=tuple(np.geomspace(group["k_min"], group["k_max"], group["n_k"])),
        nt=int(group["nt"]), nx=int(group["nx"]), t_check=float(group["t_check"]))


def cmd_barrier(config, args):
    kind, params = config.kind, config.params
    init = config.init_spec.build(kind, params.s0)
    spec = _search_spec(config["barrier"])

    mu0, witness = search_mu0(params, kind, init, spec)

    os.makedirs(config.output_dir, exist_ok=True)
    write_json(os.path.join(config.output_dir, "certificate.json"), certificate(witness, mu0, spec))

    log.info("Certified vanishing for mu <= %.6g", mu0)

    return ExitCode.OK


def cmd_sweep(config, args):
    kind, params, grid = config.kind, config.params, config.grid
    group = config["sweep"]

    plan = build_plan(params, group["mus"], group["s0s"] or None)
    tol_vanish, tol_stall = _tolerances(config)

    rows = sweep(plan, kind, config.init_spec, grid, jobs=args.jobs, tol_vanish=tol_vanish,
                 tol_stall=tol_stall, stop_on_certificate=group["stop_on_certificate"])

    os.makedirs(config.output_dir, exist_ok=True)
    write_rows(os.path.join(config.output_dir, "sweep.csv"), SWEEP_COLUMNS, rows)

    errors = {row["key"]: row["error"] for row in rows if row["verdict"] == ERROR}

    if errors:
        write_json(os.path.join(config.output_dir, "sweep_errors.json"), errors)

    return ExitCode.OK


HANDLERS = {
    "simulate": cmd_simulate,
    "classify": cmd_classify,
    "threshold": cmd_threshold,
    "steady": cmd_steady,
    "ode": cmd_ode,
    "barrier": cmd_barrier,
    "sweep": cmd_sweep,
}

# Exception classes in lookup order; the first match decides the exit code.
EXIT_CODES = (
    (ConfigException, ExitCode.CONFIG),
    (CheckpointException, ExitCode.CONFIG),
    (ParamsException, ExitCode.CONFIG),
    (InitialDataException, ExitCode.CONFIG),
    (NoThresholdException, ExitCode.NO_RESULT),
    (NoBracketException, ExitCode.NO_RESULT),
    (UndeterminedException, ExitCode.NO_RESULT),
    (NoWitnessException, ExitCode.NO_RESULT),
    (NonMonotoneException, ExitCode.NUMERIC),
    (SolverException, ExitCode.NUMERIC),
    (NewtonException, ExitCode.NUMERIC),
    (BarrierOrderException, ExitCode.NUMERIC),
    (OdeException, ExitCode.NUMERIC),
    (IterationException, ExitCode.NUMERIC),
    (SteadyException, ExitCode.CONFIG),
    (SupersolutionException, ExitCode.CONFIG),
    (ClassifyException, ExitCode.CONFIG),
)




def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--out", help="output directory (overrides output.dir)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--resume", help="checkpoint to continue from")
    common.add_argument("--run", help="run directory to classify")
    common.add_argument("--plots", action="store_true", help="write SVG plots")

    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true")
    verbosity.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="freeboundary",
                                     description="Free boundary competition laboratory.")
    commands = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        commands.add_parser(command, parents=[common], help=HELP[command])

    return parser


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO

    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s",
                        force=True)
    logging.getLogger("matplotlib").setLevel(logging.WARNING)


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    try:
        config = RunConfig.load(args.config)

        if args.out is not None:
            config.set("output", "dir", args.out)

        if args.jobs < 1:
            raise ConfigException(f"--jobs must be at least 1, got {args.jobs}")

        if args.command != "classify":
            config.validate(args.command)

        return HANDLERS[args.command](config, args)

    except Exception as e:
        for exception, code in EXIT_CODES:
            if isinstance(e, exception):
                log.error("%s: %s", type(e).__name__, e)
                return code

        raise




if __name__ == "__main__":
    sys.exit(main())
