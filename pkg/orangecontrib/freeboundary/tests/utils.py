import contextlib
import io
import math
import os
import sys
import unittest

import numpy as np

from scipy import sparse
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.sparse.linalg import spsolve

from orangecontrib.freeboundary.core import ModelParams, ProblemKind




# Acceptance-scale runs take minutes; they only run with FREEBOUNDARY_SLOW_TESTS=1.
SLOW_TESTS = os.environ.get("FREEBOUNDARY_SLOW_TESTS", "0") == "1"

slow = unittest.skipUnless(SLOW_TESTS, "Test would take too long, set FREEBOUNDARY_SLOW_TESTS=1.")




@contextlib.contextmanager
def nostderr():
    original_stderr = sys.stderr
    sys.stderr = io.StringIO()
    try:
        yield
    finally:
        sys.stderr = original_stderr


def make_params(**changes):
    """The symmetric weak competition constants, with ``changes`` applied."""
    values = dict(k=0.5, h=0.5, r=1.0, D=1.0, mu=1.0, rho=1.0, s0=2.0)
    values.update(changes)
    return ModelParams(**values)




def explicit_fixed_domain_step(U, V, s, params, kind, dt):
    """One forward Euler step of the system on the fixed interval [0, s].

    Node i sits at x = i s / n; x = s is pinned to zero, and x = 0 mirrored
    (no-flux) or pinned (Dirichlet).
    """
    n = len(U) - 1
    dx = s / n

    def laplacian(P):
        lap = np.zeros_like(P)
        lap[1:-1] = (P[:-2] - 2.0 * P[1:-1] + P[2:]) / dx ** 2
        lap[0] = 2.0 * (P[1] - P[0]) / dx ** 2
        return lap

    U_new = U + dt * (laplacian(U) + U * (1.0 - U - params.k * V))
    V_new = V + dt * (params.D * laplacian(V) + params.r * V * (1.0 - V - params.h * U))

    U_new[-1] = V_new[-1] = 0.0

    if kind == ProblemKind.DFB:
        U_new[0] = V_new[0] = 0.0

    return U_new, V_new


def one_species_front_fixing(U, s, mu, kind, dt, n_steps):
    """Single-species free boundary run, u_t = u_xx + u(1 - u), s' = -mu u_x(s).

    Same front-fixed scheme as the two-species stepper, assembled with
    scipy.sparse and solved with spsolve.

    Returns
    -------
    tuple
        Front positions after every step and the final profile.
    """
    U = np.array(U, dtype=float)
    n = len(U) - 1
    d_xi = 1.0 / n
    xi = np.linspace(0.0, 1.0, n + 1)
    first = 0 if kind == ProblemKind.NFB else 1

    fronts = []

    for _ in range(n_steps):
        flux = (U[n - 2] - 4.0 * U[n - 1]) / (2.0 * s * d_xi)
        speed = max(0.0, -mu * flux)
        s = s + dt * speed

        grad = np.zeros_like(U)
        grad[1:-1] = (U[2:] - U[:-2]) / (2.0 * d_xi)
        rhs = U + dt * (speed / s * xi * grad + U * (1.0 - U))

        kappa = dt / (s * d_xi) ** 2
        m = n - first

        upper = np.full(m - 1, -kappa)
        if kind == ProblemKind.NFB:
            upper[0] = -2.0 * kappa

        A = sparse.diags([np.full(m - 1, -kappa), np.full(m, 1.0 + 2.0 * kappa), upper],
                         [-1, 0, 1], format="csc")

        U_new = np.zeros_like(U)
        U_new[first:n] = spsolve(A, rhs[first:n])
        U = np.maximum(U_new, 0.0)

        fronts.append(s)

    return np.array(fronts), U




def _logistic_slope(y, d, alpha):
    """y' on the positive branch of d y'^2 / 2 = alpha (1/6 - y^2/2 + y^3/3).

    The cubic factors as (1 - y)^2 (1 + 2 y) / 3, which keeps the slope
    nonzero for y < 1 in floating point.
    """
    return (1.0 - y) * math.sqrt((1.0 + 2.0 * y) / 3.0) * math.sqrt(alpha / d)


def logistic_position(y, d=1.0, alpha=1.0):
    """x at which the half-line logistic profile reaches ``y`` in [0, 1)."""
    value, _ = quad(lambda z: 1.0 / _logistic_slope(z, d, alpha), 0.0, y, limit=200)
    return value


def logistic_profile(xs, d=1.0, alpha=1.0):
    """Half-line logistic profile at ``xs``, inverting ``logistic_position``."""
    values = []

    for x in np.atleast_1d(xs):
        if x <= 0:
            values.append(0.0)
            continue

        values.append(brentq(lambda y: logistic_position(y, d, alpha) - x, 0.0, 1.0 - 1e-12,
                             xtol=1e-14))

    return np.array(values)


def logistic_closed_form(xs, d=1.0, alpha=1.0):
    """Explicit half-line logistic profile 1 - 1.5 sech^2(z / 2 + atanh(1 / sqrt 3)), z = x sqrt(alpha / d)."""
    z = np.asarray(xs, dtype=float) * math.sqrt(alpha / d)
    return 1.0 - 1.5 / np.cosh(z / 2.0 + math.atanh(1.0 / math.sqrt(3.0))) ** 2


def logistic_slope_at_origin(d=1.0, alpha=1.0):
    return _logistic_slope(0.0, d, alpha)
