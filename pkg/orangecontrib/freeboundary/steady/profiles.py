import logging

import numpy as np

from orangecontrib.freeboundary.core import ProblemKind, Regime, classify_regime, coexistence_limit
from orangecontrib.freeboundary.steady.halfline import (
    HalfLineGrid, SteadyException, banded, newton_solve, solve_coupled_halfline,
    solve_logistic_halfline
)


log = logging.getLogger(__name__)




class BarrierOrderException(SteadyException):
    pass




# Ordering violations beyond this are inconsistent barriers.
ORDER_TOLERANCE = 1e-8




class SteadyProfiles:
    """The four barrier profiles on a shared half-line grid.

    ``u_bar`` and ``v_bar`` solve the logistic problems, ``u_low`` and
    ``v_low`` the problems with the competitor frozen at its upper
    barrier.
    """

    COLUMNS = ("x", "u_bar", "v_bar", "u_low", "v_low")


    def __init__(self, grid, u_bar, v_bar, u_low, v_low, params=None):
        self.grid = grid
        self.u_bar = np.asarray(u_bar, dtype=float)
        self.v_bar = np.asarray(v_bar, dtype=float)
        self.u_low = np.asarray(u_low, dtype=float)
        self.v_low = np.asarray(v_low, dtype=float)
        self.params = params


    @property
    def x(self):
        return self.grid.x


    def as_array(self):
        return np.column_stack((self.x, self.u_bar, self.v_bar, self.u_low, self.v_low))


    def check(self):
        """Verify the barrier invariants.

        Returns
        -------
        list of str
            Violations of the caps u_low <= 1 - k and v_low <= 1 - h.
            These are reported only.

        Raises
        ------
        BarrierOrderException
            If a lower barrier exceeds its upper one, a profile is negative
            or does not vanish at x = 0, or an upper barrier decreases.
        """
        profiles = {"u_bar": self.u_bar, "v_bar": self.v_bar,
                    "u_low": self.u_low, "v_low": self.v_low}

        for name, profile in profiles.items():
            if profile[0] != 0.0:
                raise BarrierOrderException(f"{name}(0) = {profile[0]:.3e} must vanish")

            if np.any(profile[1:-1] <= 0):
                raise BarrierOrderException(f"{name} is not positive inside (0, L)")

        for low, bar in (("u_low", "u_bar"), ("v_low", "v_bar")):
            excess = float(np.max(profiles[low] - profiles[bar]))

            if excess > ORDER_TOLERANCE:
                raise BarrierOrderException(f"{low} exceeds {bar} by {excess:.3e}")

        for name in ("u_bar", "v_bar"):
            drop = float(-np.min(np.diff(profiles[name])))

            if drop > ORDER_TOLERANCE:
                raise BarrierOrderException(f"{name} decreases by {drop:.3e}")

        warnings = []

        if self.params is not None:
            caps = (("u_low", self.u_low, 1.0 - self.params.k),
                    ("v_low", self.v_low, 1.0 - self.params.h))

            for name, profile, cap in caps:
                excess = float(np.max(profile) - cap)

                if excess > ORDER_TOLERANCE:
                    message = f"sup {name} exceeds {cap:.6g} by {excess:.3e}"
                    log.warning("Barrier cap violated: %s", message)
                    warnings.append(message)

        return warnings




def build_barriers(params, grid=None):
    """Barrier profiles of the weak competition steady problem.

    Parameters
    ----------
    params : ModelParams
        Must lie in the weak competition regime.
    grid : HalfLineGrid, optional

    Returns
    -------
    SteadyProfiles
        Verified with ``SteadyProfiles.check``; cap violations are kept in
        the ``warnings`` attribute.
    """
    if grid is None:
        grid = HalfLineGrid()

    params.validate()

    if classify_regime(params) != Regime.WeakCompetition:
        raise SteadyException(
            f"Barriers need weak competition (0 < h, k < 1), got h={params.h}, k={params.k}")

    u_bar = solve_logistic_halfline(1.0, 1.0, grid)
    v_bar = solve_logistic_halfline(params.D, params.r, grid)

    v_low = solve_coupled_halfline(params.r * (1.0 - params.h * u_bar), params.D, params.r, grid)
    u_low = solve_coupled_halfline(1.0 - params.k * v_bar, 1.0, 1.0, grid)

    profiles = SteadyProfiles(grid, u_bar, v_bar, u_low, v_low, params)
    profiles.warnings = profiles.check()

    return profiles


def check_sandwich(record, barriers, window=(0.0, 5.0), slack=0.02):
    """Compare the final profiles of a run with the barrier sandwich.

    Parameters
    ----------
    record : RunRecord
        Preferably a spreading DFB run.
    barriers : SteadyProfiles
    window : tuple
        Interval [x_lo, x_hi] inside [0, s(t_max)] and [0, L].
    slack : float
        Non-negative tolerance.

    Returns
    -------
    dict
        Largest amounts by which each profile falls below its lower or
        rises above its upper barrier, and ``passed``.
    """
    if not slack >= 0:
        raise SteadyException(f"Slack must be non-negative, got {slack}")

    if not record.snapshots:
        raise SteadyException("Record has no profile snapshots.")

    _, s, U, V = record.snapshots[-1]
    x_lo, x_hi = window

    if not 0 <= x_lo < x_hi <= s:
        raise SteadyException(f"Window [{x_lo}, {x_hi}] is not inside [0, s]=[0, {s:.6g}]")

    if x_hi > barriers.grid.L:
        raise SteadyException(f"Window [{x_lo}, {x_hi}] exceeds the barrier grid L={barriers.grid.L}")

    if record.kind != ProblemKind.DFB:
        log.warning("Sandwich check on a %s run; the barriers vanish at x = 0", record.kind)

    x = barriers.x
    mask = (x >= x_lo) & (x <= x_hi)
    xs = x[mask]

    grid_x = s * np.linspace(0.0, 1.0, len(U))
    u = np.interp(xs, grid_x, U)
    v = np.interp(xs, grid_x, V)

    def worst(values):
        return max(0.0, float(np.max(values)))

    report = {
        "max_lower_violation_u": worst(barriers.u_low[mask] - u),
        "max_upper_violation_u": worst(u - barriers.u_bar[mask]),
        "max_lower_violation_v": worst(barriers.v_low[mask] - v),
        "max_upper_violation_v": worst(v - barriers.v_bar[mask]),
    }

    report["passed"] = all(value <= slack for value in report.values())
    report["window"] = [x_lo, x_hi]
    report["slack"] = slack

    return report


def solve_steady_system(params, grid=None, barriers=None):
    """Coupled steady state of the weak competition system on the half-line.

    Solves -u'' = u(1 - u - kv), -D v'' = r v(1 - v - hu), u(0) = v(0) = 0,
    closed at x = L by the coexistence state. Newton starts from the middle
    of the barrier sandwich.

    Returns
    -------
    tuple of numpy.ndarray
        (u, v) on ``grid.x``.
    """
    if grid is None:
        grid = barriers.grid if barriers is not None else HalfLineGrid()

    if barriers is None:
        barriers = build_barriers(params, grid)

    u_inf, v_inf = coexistence_limit(params)

    k, h, r, D = params.k, params.h, params.r, params.D
    m = grid.m
    c = 1.0 / grid.dx ** 2
    n = 2 * (m - 1)

    # Unknowns interleaved as (u_1, v_1, u_2, v_2, ...).
    def split(y):
        u = np.concatenate(([0.0], y[0::2], [u_inf]))
        v = np.concatenate(([0.0], y[1::2], [v_inf]))
        return u, v

    def residual(y):
        u, v = split(y)
        ui, vi = u[1:-1], v[1:-1]

        F = np.empty(n)
        F[0::2] = c * (u[:-2] - 2.0 * ui + u[2:]) + ui * (1.0 - ui - k * vi)
        F[1::2] = D * c * (v[:-2] - 2.0 * vi + v[2:]) + r * vi * (1.0 - vi - h * ui)

        return F

    def jacobian(y):
        ui, vi = y[0::2], y[1::2]

        main = np.empty(n)
        main[0::2] = -2.0 * c + 1.0 - 2.0 * ui - k * vi
        main[1::2] = -2.0 * D * c + r * (1.0 - 2.0 * vi - h * ui)

        upper = np.zeros(n)
        upper[0::2] = -k * ui

        lower = np.zeros(n)
        lower[1::2] = -r * h * vi

        coupling = np.empty(n)
        coupling[0::2] = c
        coupling[1::2] = D * c

        return banded({-2: coupling, -1: lower, 0: main, 1: upper, 2: coupling}, n, 2)

    guess = np.empty(n)
    guess[0::2] = 0.5 * (barriers.u_low + barriers.u_bar)[1:m]
    guess[1::2] = 0.5 * (barriers.v_low + barriers.v_bar)[1:m]

    u, v = split(newton_solve(residual, jacobian, guess, 2, label="steady system"))

    for name, profile, low, bar in (("u", u, barriers.u_low, barriers.u_bar),
                                    ("v", v, barriers.v_low, barriers.v_bar)):
        outside = max(float(np.max(low - profile)), float(np.max(profile - bar)))

        if outside > 1e-6:
            log.warning("Steady %s leaves the barrier sandwich by %.3e", name, outside)

    return u, v
