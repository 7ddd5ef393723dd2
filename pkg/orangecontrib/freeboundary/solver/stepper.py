import math

import numpy as np

from scipy.linalg import solve_banded

from orangecontrib.freeboundary.core import ProblemKind
from orangecontrib.freeboundary.solver.state import SimState




class SolverException(Exception):
    """Base class of the step failures.

    Attributes
    ----------
    step : int or None
        Index of the step that failed.
    record : RunRecord or None
        The partial record, attached by ``simulate``.
    """

    def __init__(self, message, step=None):
        Exception.__init__(self, message)
        self.step = step
        self.record = None


class BlowUpException(SolverException):
    pass


class PositivityException(SolverException):
    pass


class FrontRetreatException(SolverException):
    pass


class StabilityException(SolverException):
    pass




# Undershoots down to this level are roundoff and are flushed to zero.
UNDERSHOOT_TOLERANCE = 1e-12

# dt <= STABILITY_FACTOR * d_xi * s / s'
STABILITY_FACTOR = 0.5




def boundary_flux(state):
    """Gradients u_x, v_x at the front x = s(t).

    Second order one-sided differences in xi using the pinned zero at
    xi = 1, scaled by 1/s.
    """
    n = state.n_cells

    if n < 3:
        raise ValueError("boundary_flux needs at least three cells.")

    scale = 2.0 * state.s / n

    flux_u = (state.U[n - 2] - 4.0 * state.U[n - 1]) / scale
    flux_v = (state.V[n - 2] - 4.0 * state.V[n - 1]) / scale

    return flux_u, flux_v


def front_speed(flux_u, flux_v, params):
    """Stefan condition s' = -mu (u_x + rho v_x)."""
    return -params.mu * (flux_u + params.rho * flux_v)


def checked_front_speed(state, params):
    """Front speed of ``state`` with roundoff retreats flushed to zero.

    Raises
    ------
    FrontRetreatException
        If the front would move backwards by more than roundoff.
    """
    s_prime = front_speed(*boundary_flux(state), params)

    if not math.isfinite(s_prime):
        raise BlowUpException(f"Non-finite front speed at step {state.step}", state.step)

    if s_prime < 0:
        if s_prime < -UNDERSHOOT_TOLERANCE * max(1.0, params.mu * (1.0 + params.rho)):
            raise FrontRetreatException(
                f"Front retreat s'={s_prime:.3e} at step {state.step}, t={state.t:.6g}",
                state.step)

        s_prime = 0.0

    return s_prime


def stability_limit(state, params):
    """Largest dt the explicit advection accepts, inf for a resting front."""
    s_prime = checked_front_speed(state, params)

    if s_prime == 0:
        return math.inf

    # A denormal front speed leaves no limit at all.
    with np.errstate(over="ignore"):
        return float(STABILITY_FACTOR * state.s / (state.n_cells * s_prime))


def within_stability_limit(state, params, dt):
    """Whether ``dt`` satisfies dt s' <= 0.5 d_xi s, without dividing by s'."""
    s_prime = checked_front_speed(state, params)
    return dt * s_prime * state.n_cells <= STABILITY_FACTOR * state.s


def _bands(n_unknowns, kappa, kind):
    """Banded matrix (I - dt d/s^2 D_xixi) for ``solve_banded((1, 1), ...)``."""
    ab = np.empty((3, n_unknowns))

    ab[0, :] = -kappa
    ab[1, :] = 1.0 + 2.0 * kappa
    ab[2, :] = -kappa

    ab[0, 0] = 0.0
    ab[2, -1] = 0.0

    if kind == ProblemKind.NFB:
        # Ghost node U_{-1} = U_1 doubles the coupling of row 0.
        ab[0, 1] = -2.0 * kappa

    return ab


def _explicit_part(P, xi, advection, growth, dt, d_xi):
    """P + dt (xi s'/s P_xi + growth), central differences inside."""
    grad = np.zeros_like(P)
    grad[1:-1] = (P[2:] - P[:-2]) / (2.0 * d_xi)

    return P + dt * (advection * xi * grad + growth)


def _check_profile(P, name, step):
    if not np.all(np.isfinite(P)):
        raise BlowUpException(f"blow-up: non-finite {name} at step {step}", step)

    low = P.min()

    if low < -UNDERSHOOT_TOLERANCE:
        raise PositivityException(
            f"positivity violation: min {name} = {low:.3e} at step {step}", step)

    if low < 0:
        np.maximum(P, 0.0, out=P)


def transformed_step(state, params, kind, dt):
    """Advance the front-fixed system by one step.

    The front moves first (forward Euler with the speed of the current
    profiles), then the profiles are advanced on the new front with
    implicit diffusion and explicit advection and reaction.

    Parameters
    ----------
    state : SimState
    params : ModelParams
    kind : str
        ``ProblemKind.NFB`` or ``ProblemKind.DFB``.
    dt : float

    Returns
    -------
    SimState
        The new state, its ``s_prime`` being the front speed of the new
        profiles.
    """
    n = state.n_cells
    d_xi = 1.0 / n
    step = state.step + 1

    s_prime = checked_front_speed(state, params)

    if dt * s_prime > STABILITY_FACTOR * d_xi * state.s * (1.0 + 1e-12):
        raise StabilityException(
            f"dt={dt} exceeds the advective limit {STABILITY_FACTOR * d_xi * state.s / s_prime:.3e}"
            f" at step {step}", step)

    s_new = state.s + dt * s_prime

    xi = state.xi
    advection = s_prime / s_new

    U, V = state.U, state.V

    rhs_u = _explicit_part(U, xi, advection, U * (1.0 - U - params.k * V), dt, d_xi)
    rhs_v = _explicit_part(V, xi, advection, params.r * V * (1.0 - V - params.h * U), dt, d_xi)

    first = 0 if kind == ProblemKind.NFB else 1
    n_unknowns = n - first

    kappa_u = dt / (s_new * s_new * d_xi * d_xi)
    kappa_v = params.D * kappa_u

    U_new = np.zeros_like(U)
    V_new = np.zeros_like(V)

    U_new[first:n] = solve_banded((1, 1), _bands(n_unknowns, kappa_u, kind), rhs_u[first:n],
                                  check_finite=False)
    V_new[first:n] = solve_banded((1, 1), _bands(n_unknowns, kappa_v, kind), rhs_v[first:n],
                                  check_finite=False)

    _check_profile(U_new, "u", step)
    _check_profile(V_new, "v", step)

    new_state = SimState(state.t + dt, s_new, 0.0, U_new, V_new, step)
    new_state.s_prime = checked_front_speed(new_state, params)

    return new_state
