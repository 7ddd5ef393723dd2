import math

import numpy as np

from dataclasses import dataclass

from orangecontrib.freeboundary.core import ProblemKind, lambda_threshold




class SupersolutionException(Exception):
    pass




DEFAULT_T_CHECK = 50.0
DEFAULT_NT = 400
DEFAULT_NX = 400

# Margins above -MARGIN_TOL pass; roundoff at the pinned ends is of that size.
MARGIN_TOL = 1e-12

LABEL = "numerical certificate (pointwise sampling, not interval arithmetic)"




@dataclass(frozen=True, eq=False)
class SupersolutionParams:
    """Candidate upper solution for a vanishing DFB run.

    sigma(t) = s0 (1 + delta - (delta / 2) exp(-gamma t)) bounds the front,
    w(t, x) = K exp(-gamma t) sin(pi x / sigma(t)) bounds both species.

    Attributes
    ----------
    delta, gamma, K : float
    params : ModelParams
        The system the candidate is checked against; ``mu`` is ignored.
    init : InitialData
        Initial profiles the candidate must dominate.
    """

    delta: float
    gamma: float
    K: float
    params: object
    init: object


    @property
    def s0(self):
        return self.params.s0


    @property
    def front_bound(self):
        """Limit s0 (1 + delta) of sigma(t), a bound on the final front."""
        return self.s0 * (1.0 + self.delta)


    def sigma(self, t):
        return self.s0 * (1.0 + self.delta - 0.5 * self.delta * np.exp(-self.gamma * t))


    def sigma_prime(self, t):
        return self.s0 * 0.5 * self.delta * self.gamma * np.exp(-self.gamma * t)


    def as_dict(self):
        return {"delta": self.delta, "gamma": self.gamma, "K": self.K}




def eval_barrier(p, t, x):
    """The pair (sigma(t), w(t, x)), for scalars or broadcasting arrays.

    Raises
    ------
    SupersolutionException
        If some x lies outside [0, sigma(t)].
    """
    t, x = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(x, dtype=float))
    sigma = p.sigma(t)

    if np.any(x < 0) or np.any(x > sigma * (1.0 + 1e-14)):
        raise SupersolutionException("x must lie in [0, sigma(t)].")

    w = p.K * np.exp(-p.gamma * t) * np.sin(np.pi * x / sigma)

    if w.ndim == 0:
        return float(sigma), float(w)

    return sigma, w


def _pde_margins(p, t, y):
    """w_t - w_xx - w(1-w) and w_t - D w_xx - r w(1-w) at x = y sigma(t)."""
    params = p.params

    sigma = p.sigma(t)
    ratio = p.sigma_prime(t) / sigma
    decay = p.K * np.exp(-p.gamma * t)

    w = decay * np.sin(np.pi * y)
    w_t = -p.gamma * w - decay * np.pi * y * ratio * np.cos(np.pi * y)
    w_xx = -(np.pi / sigma) ** 2 * w

    growth = w * (1.0 - w)

    return w_t - w_xx - growth, w_t - params.D * w_xx - params.r * growth


def _front_flux(p, t):
    """|w_x(t, sigma(t))|."""
    return p.K * np.pi * np.exp(-p.gamma * t) / p.sigma(t)


def front_mu_limit(p, sample_times):
    """Largest mu with sigma' + mu (1 + rho) w_x(sigma) >= 0 at every sample time."""
    flux = (1.0 + p.params.rho) * _front_flux(p, np.asarray(sample_times, dtype=float))

    if np.all(flux == 0):
        return math.inf

    return float(np.min(p.sigma_prime(np.asarray(sample_times, dtype=float)) / flux))


def worst_margins(p, mu, nt=DEFAULT_NT, nx=DEFAULT_NX, t_check=DEFAULT_T_CHECK):
    """Minimum of each inequality's margin over an nt x nx sample grid."""
    ts = np.linspace(0.0, t_check, nt)
    ys = np.linspace(0.0, 1.0, nx)

    T, Y = np.meshgrid(ts, ys, indexing="ij")
    pde_u, pde_v = _pde_margins(p, T, Y)

    xs = np.linspace(0.0, p.s0, nx)
    _, w0 = eval_barrier(p, 0.0, xs)
    u0, v0 = p.init.sample(xs)

    front = p.sigma_prime(ts) - mu * (1.0 + p.params.rho) * _front_flux(p, ts)

    return {
        "pde_u": float(np.min(pde_u)),
        "pde_v": float(np.min(pde_v)),
        "initial": float(min(np.min(w0 - u0), np.min(w0 - v0))),
        "front": float(np.min(front)),
    }


def verify_supersolution(p, mu, params=None, nt=DEFAULT_NT, nx=DEFAULT_NX,
                         t_check=DEFAULT_T_CHECK):
    """Check the four upper-solution inequalities on a sample grid.

    Derivatives of w are evaluated in closed form. ``params`` replaces the
    candidate's own model constants when given.

    Returns
    -------
    dict
        ``passed``, ``worst_margins`` per inequality, the sample ``grid``,
        ``front_bound`` = s0 (1 + delta) and whether it lies below the
        threshold length.
    """
    if params is not None:
        p = SupersolutionParams(p.delta, p.gamma, p.K, params, p.init)

    margins = worst_margins(p, mu, nt, nx, t_check)
    lam = lambda_threshold(p.params, ProblemKind.DFB)

    return {
        "passed": all(value >= -MARGIN_TOL for value in margins.values()),
        "mu": mu,
        "worst_margins": margins,
        "grid": {"nt": nt, "nx": nx, "t_check": t_check},
        "front_bound": p.front_bound,
        "lambda": lam,
        "below_threshold": p.front_bound < lam,
        "label": LABEL,
    }
