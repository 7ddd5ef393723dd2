import logging
import math

from orangecontrib.freeboundary.core import a_priori_bound
from orangecontrib.freeboundary.solver.state import RunRecord, SimState
from orangecontrib.freeboundary.solver.stepper import (
    SolverException, checked_front_speed, stability_limit, transformed_step, within_stability_limit
)


log = logging.getLogger(__name__)


# Relative slack on the monitored ceilings sup U, sup V <= M and s' <= mu M (1 + rho).
CEILING_SLACK = 1e-2

# At most this many ceiling excursions are kept as text in a record.
MAX_WARNINGS = 20




def _monitor(record, state, bound, speed_bound):
    ceiling = bound * (1.0 + CEILING_SLACK)

    messages = []

    if state.sup_u > ceiling or state.sup_v > ceiling:
        messages.append(f"t={state.t:.6g}: sup(u, v)={max(state.sup_u, state.sup_v):.6g} above M={bound:.6g}")

    if state.s_prime > speed_bound * (1.0 + CEILING_SLACK):
        messages.append(f"t={state.t:.6g}: s'={state.s_prime:.6g} above mu*M*(1+rho)={speed_bound:.6g}")

    for message in messages:
        if len(record.warnings) < MAX_WARNINGS:
            log.warning("Ceiling excursion, %s", message)
            record.warnings.append(message)


def _advance(state, params, kind, dt):
    """One outer step, split into equal sub-steps if advection demands it."""
    if within_stability_limit(state, params, dt):
        return transformed_step(state, params, kind, dt)

    limit = stability_limit(state, params)
    # Near the limit the comparison and the quotient may round differently.
    n_sub = max(2, int(math.ceil(dt / limit)))
    sub_dt = dt / n_sub

    log.debug("Step %d split into %d sub-steps (limit %.3e)", state.step + 1, n_sub, limit)

    step = state.step

    for _ in range(n_sub):
        # Sub-steps report the outer step index in their errors.
        state.step = step

        if not within_stability_limit(state, params, sub_dt):
            # The front accelerated inside the outer step.
            state = _advance(state, params, kind, sub_dt)
        else:
            state = transformed_step(state, params, kind, sub_dt)

    state.step = step + 1

    return state


def simulate(params, kind, init, grid, stop_above=None, resume=None):
    """Run the free boundary problem from t = 0 (or a checkpoint) to t_max.

    Parameters
    ----------
    params : ModelParams
    kind : str
    init : InitialData
    grid : GridSpec
    stop_above : float, optional
        Stop as soon as the front exceeds this position (spreading
        certificate).
    resume : RunRecord, optional
        A record whose final ``state`` the run continues from.

    Returns
    -------
    RunRecord

    Raises
    ------
    SolverException
        With the partial record attached as ``record`` and its failure
        marker set.
    """
    params.validate(strict=False)
    grid.validate(params.s0)
    init.validate(kind, strict=False)

    bound = a_priori_bound(init)
    speed_bound = params.mu * bound * (1.0 + params.rho)

    if resume is not None:
        record = resume
        record.grid = grid
        state = resume.state.copy()
        log.info("Resuming %s run at step %d (t=%.6g)", kind, state.step, state.t)

    else:
        record = RunRecord(params, kind, grid, init)
        state = SimState.initial(params, kind, init, grid.n_cells)
        state.s_prime = checked_front_speed(state, params)

        record.append(state)
        record.add_snapshot(state)
        log.info("Starting %s run: %s, n_cells=%d, dt=%g, t_max=%g",
                 kind, params, grid.n_cells, grid.dt, grid.t_max)

    record.state = state
    record.stopped_early = False

    n_steps = grid.n_steps

    try:
        while state.step < n_steps:
            if stop_above is not None and state.s > stop_above:
                record.stopped_early = True
                break

            state = _advance(state, params, kind, grid.dt)
            state.t = state.step * grid.dt

            record.append(state)
            record.state = state

            if state.step % grid.snapshot_stride == 0:
                record.add_snapshot(state)

            _monitor(record, state, bound, speed_bound)

    except SolverException as e:
        record.failure = str(e)
        record.failed_step = e.step
        e.record = record
        log.error("Run failed: %s", e)
        raise

    if record.snapshots[-1][0] != state.t:
        record.add_snapshot(state)

    log.info("Finished at t=%.6g with s=%.6g, sup u=%.3e, sup v=%.3e",
             state.t, state.s, state.sup_u, state.sup_v)

    return record
