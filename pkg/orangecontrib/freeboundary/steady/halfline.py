import logging
import math

import numpy as np

from dataclasses import dataclass
from scipy.linalg import solve_banded


log = logging.getLogger(__name__)




class SteadyException(Exception):
    pass


class NewtonException(SteadyException):
    """Newton iteration that failed to converge.

    Attributes
    ----------
    residual : float
        Max-norm of the residual at the last iterate.
    iterations : int
    """

    def __init__(self, message, residual, iterations):
        SteadyException.__init__(self, message)
        self.residual = residual
        self.iterations = iterations




MAX_ITERATIONS = 100
RESIDUAL_TOL = 1e-9
STEP_TOL = 1e-13

# Damping factors below this are not tried.
MIN_DAMPING = 2.0 ** -20

# Truncation lengths shorter than this many diffusion lengths are logged.
MIN_DIFFUSION_LENGTHS = 20




@dataclass(frozen=True)
class HalfLineGrid:
    """Uniform truncation x_j = j L / m of the half-line."""

    L: float = 20.0
    m: int = 2000

    MIN_NODES = 200


    @property
    def dx(self):
        return self.L / self.m


    @property
    def x(self):
        return np.linspace(0.0, self.L, self.m + 1)


    def validate(self):
        if not self.L > 0:
            raise SteadyException(f"Truncation length must be positive, got {self.L}")

        if int(self.m) != self.m or self.m < HalfLineGrid.MIN_NODES:
            raise SteadyException(f"Node count must be an integer >= {HalfLineGrid.MIN_NODES}, got {self.m}")


    def doubled(self):
        """Twice the length at the same spacing."""
        return HalfLineGrid(2.0 * self.L, 2 * self.m)


    def as_dict(self):
        return {"L": self.L, "m": self.m}




def banded(diagonals, n, bandwidth):
    """Banded storage for ``solve_banded((bandwidth, bandwidth), ...)``.

    ``diagonals`` maps an offset o to the entries A[i, i + o], indexed by
    the row i.
    """
    ab = np.zeros((2 * bandwidth + 1, n))

    for offset, values in diagonals.items():
        values = np.broadcast_to(values, (n,))

        if offset >= 0:
            ab[bandwidth - offset, offset:] = values[:n - offset]
        else:
            ab[bandwidth - offset, :n + offset] = values[-offset:]

    return ab


def newton_solve(residual, jacobian, guess, bandwidth, label="steady state"):
    """Damped Newton iteration on a banded nonlinear system.

    Parameters
    ----------
    residual : callable
        y -> F(y).
    jacobian : callable
        y -> banded storage of dF/dy.
    guess : numpy.ndarray
    bandwidth : int
    label : str
        Used in log and error messages.

    Returns
    -------
    numpy.ndarray

    Raises
    ------
    NewtonException
        After ``MAX_ITERATIONS`` iterations without convergence.
    """
    y = np.array(guess, dtype=float)
    F = residual(y)
    norm = np.max(np.abs(F))

    for iteration in range(1, MAX_ITERATIONS + 1):
        if norm <= RESIDUAL_TOL:
            log.debug("Newton for %s converged in %d iterations", label, iteration - 1)
            return y

        delta = solve_banded((bandwidth, bandwidth), jacobian(y), -F)

        # Halve the step until the residual decreases.
        damping = 1.0

        while True:
            trial = y + damping * delta
            F_trial = residual(trial)
            norm_trial = np.max(np.abs(F_trial))

            if norm_trial < norm or damping <= MIN_DAMPING:
                break

            damping /= 2.0

        y, F, norm = trial, F_trial, norm_trial

        if not np.isfinite(norm):
            break

        if damping * np.max(np.abs(delta)) <= STEP_TOL:
            log.debug("Newton for %s stalled at residual %.3e", label, norm)

            if norm <= math.sqrt(RESIDUAL_TOL):
                return y

            break

    raise NewtonException(f"Newton for {label} did not converge, residual {norm:.3e}",
                          norm, iteration)


def _check_truncation(grid, d, rate):
    lengths = grid.L / math.sqrt(d / rate)

    if lengths < MIN_DIFFUSION_LENGTHS:
        log.warning("Truncation L=%g spans only %.1f diffusion lengths", grid.L, lengths)


def _ramp(grid, level, d, rate):
    """Linear rise over two diffusion lengths, then flat."""
    width = 2.0 * math.sqrt(d / rate)
    return level * np.minimum(1.0, grid.x / width)


def solve_coupled_halfline(f, d, lamb, grid):
    """Positive solution of -d u'' = u (f(x) - lamb u), u(0) = 0.

    Parameters
    ----------
    f : array_like
        Coefficient tabulated on the grid nodes, with inf f > 0.
    d : float
        Diffusivity.
    lamb : float
        Self-limitation rate.
    grid : HalfLineGrid

    Returns
    -------
    numpy.ndarray
        Profile on ``grid.x``, closed by u(L) = f(L) / lamb.
    """
    grid.validate()

    f = np.broadcast_to(np.asarray(f, dtype=float), (grid.m + 1,)).copy()

    if not d > 0 or not lamb > 0:
        raise SteadyException(f"d and lamb must be positive, got d={d}, lamb={lamb}")

    f0 = float(np.min(f))

    if not f0 > 0:
        raise SteadyException(f"inf f = {f0:.3e} must be positive (needs h < 1 and k < 1)")

    _check_truncation(grid, d, f0)

    m = grid.m
    c = d / grid.dx ** 2
    closure = f[-1] / lamb
    inner = f[1:m]

    def full(y):
        return np.concatenate(([0.0], y, [closure]))

    def residual(y):
        u = full(y)
        return c * (u[:-2] - 2.0 * u[1:-1] + u[2:]) + y * (inner - lamb * y)

    def jacobian(y):
        return banded({-1: c, 0: -2.0 * c + inner - 2.0 * lamb * y, 1: c}, m - 1, 1)

    guess = _ramp(grid, closure, d, f0)[1:m]

    return full(newton_solve(residual, jacobian, guess, 1, label="half-line profile"))


def solve_logistic_halfline(d, alpha, grid):
    """Positive solution of -d y'' = alpha y (1 - y), y(0) = 0, y(L) = 1."""
    if not alpha > 0:
        raise SteadyException(f"alpha must be positive, got {alpha}")

    return solve_coupled_halfline(np.full(grid.m + 1, float(alpha)), d, alpha, grid)


def slope_at_origin(profile, grid):
    """Second order one-sided derivative at x = 0."""
    return (-3.0 * profile[0] + 4.0 * profile[1] - profile[2]) / (2.0 * grid.dx)
