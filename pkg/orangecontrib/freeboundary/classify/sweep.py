import logging

from concurrent.futures import ProcessPoolExecutor

from orangecontrib.freeboundary.core import (
    InitialData, InitialDataException, InitialSpec, ParamsException, lambda_threshold
)
from orangecontrib.freeboundary.solver import GridException, SolverException, simulate
from orangecontrib.freeboundary.classify.verdict import (
    DEFAULT_TOL_VANISH, ClassifyException, classify_run
)


log = logging.getLogger(__name__)




# Verdict column of a row whose run raised.
ERROR = "Error"

COLUMNS = ("key", "mu", "k", "h", "r", "D", "rho", "s0", "verdict", "cert_time",
           "final_s", "final_sup_u", "final_sup_v")




def plan_key(params):
    return f"mu{params.mu:.6g}_s0{params.s0:.6g}"


def build_plan(base, mus, s0s=None):
    """mu x s0 grid of parameter sets, keyed by their varied values."""
    if s0s is None:
        s0s = [base.s0]

    return [(plan_key(p), p) for p in (base.with_values(mu=float(mu), s0=float(s0))
                                       for s0 in s0s for mu in mus)]


def _initial_data(init, kind, s0):
    if isinstance(init, InitialData):
        return init if init.s0 == s0 else init.rescaled(s0)

    if init is None:
        init = InitialSpec()

    return init.build(kind, s0)


def _row(key, params, classification=None, error=None):
    row = {"key": key}
    row.update({name: getattr(params, name) for name in ("mu", "k", "h", "r", "D", "rho", "s0")})

    if classification is None:
        row.update(verdict=ERROR, cert_time=None, final_s=None, final_sup_u=None,
                   final_sup_v=None, error=error)
    else:
        row.update(verdict=classification.verdict, cert_time=classification.certificate_time,
                   final_s=classification.final_s, final_sup_u=classification.final_sup_u,
                   final_sup_v=classification.final_sup_v, error=None)

    return row


def run_entry(key, params, kind, init, grid, tol_vanish=DEFAULT_TOL_VANISH, tol_stall=None,
              stop_on_certificate=True):
    """Simulate and classify one plan entry; failures become error rows."""
    try:
        params.validate(strict=False)
        lam = lambda_threshold(params, kind)

        record = simulate(params, kind, _initial_data(init, kind, params.s0), grid,
                          stop_above=lam if stop_on_certificate else None)

        return _row(key, params, classify_run(record, lam, tol_vanish, tol_stall))

    except (ParamsException, InitialDataException, GridException, SolverException,
            ClassifyException) as e:
        log.warning("Sweep entry %s failed: %s", key, e)
        return _row(key, params, error=str(e))


def _run_packed(args):
    return run_entry(*args)


def sweep(plan, kind, init, grid, jobs=1, tol_vanish=DEFAULT_TOL_VANISH, tol_stall=None,
          stop_on_certificate=True):
    """Classify every entry of ``plan``.

    Parameters
    ----------
    plan : list
        ``(key, ModelParams)`` pairs, or bare ``ModelParams`` keyed by
        ``plan_key``.
    kind : str
    init : InitialSpec or InitialData
        Initial data recipe; fixed data is stretched onto each entry's s0.
    grid : GridSpec
    jobs : int
        Worker processes. Rows come back in plan order for any value.

    Returns
    -------
    list of dict
        One row per entry with the ``COLUMNS`` fields and ``error``.
    """
    if not plan:
        raise ClassifyException("Sweep plan is empty.")

    entries = [entry if isinstance(entry, tuple) else (plan_key(entry), entry) for entry in plan]
    tasks = [(key, params, kind, init, grid, tol_vanish, tol_stall, stop_on_certificate)
             for key, params in entries]

    log.info("Sweeping %d entries with %d worker(s)", len(tasks), jobs)

    if jobs <= 1 or len(tasks) == 1:
        rows = [_run_packed(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            rows = list(executor.map(_run_packed, tasks))

    failed = sum(row["verdict"] == ERROR for row in rows)

    if failed:
        log.warning("%d of %d sweep entries failed", failed, len(rows))

    return rows
