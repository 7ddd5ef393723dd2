import logging

import numpy as np

from dataclasses import dataclass


log = logging.getLogger(__name__)




class OdeException(Exception):
    pass




DEFAULT_DT = 1e-3

# Trajectories keep every SAMPLE_STRIDE-th step.
SAMPLE_STRIDE = 100




@dataclass(frozen=True)
class OdeState:
    t: float
    u: float
    v: float




class OdeTrajectory:
    """Sampled solution of the spatially homogeneous system."""

    COLUMNS = ("t", "u", "v")


    def __init__(self, t, u, v):
        self.t = np.asarray(t, dtype=float)
        self.u = np.asarray(u, dtype=float)
        self.v = np.asarray(v, dtype=float)


    @property
    def final(self):
        return OdeState(float(self.t[-1]), float(self.u[-1]), float(self.v[-1]))


    def as_array(self):
        return np.column_stack((self.t, self.u, self.v))


    def __len__(self):
        return len(self.t)




def _rhs(u, v, k, h, r):
    return u * (1.0 - u - k * v), r * v * (1.0 - v - h * u)


def _rk4(u, v, k, h, r, dt):
    ku1, kv1 = _rhs(u, v, k, h, r)
    ku2, kv2 = _rhs(u + 0.5 * dt * ku1, v + 0.5 * dt * kv1, k, h, r)
    ku3, kv3 = _rhs(u + 0.5 * dt * ku2, v + 0.5 * dt * kv2, k, h, r)
    ku4, kv4 = _rhs(u + dt * ku3, v + dt * kv3, k, h, r)

    return (u + dt / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4),
            v + dt / 6.0 * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4))


def _check_start(u0, v0, t_max, dt):
    if np.any(np.asarray(u0) <= 0) or np.any(np.asarray(v0) <= 0):
        raise OdeException("Initial values u0 and v0 must be positive.")

    if not t_max >= 0 or not dt > 0:
        raise OdeException(f"Need t_max >= 0 and dt > 0, got t_max={t_max}, dt={dt}")


def integrate_ode(params, u0, v0, t_max, dt=DEFAULT_DT, stride=SAMPLE_STRIDE):
    """Classic fourth order Runge-Kutta for u' = u(1-u-kv), v' = rv(1-v-hu).

    Only ``k``, ``h`` and ``r`` of ``params`` enter.

    Returns
    -------
    OdeTrajectory
        Every ``stride``-th step, plus the final one.
    """
    _check_start(u0, v0, t_max, dt)

    n_steps = int(round(t_max / dt))
    u, v = float(u0), float(v0)

    samples = [(0.0, u, v)]

    for step in range(1, n_steps + 1):
        u, v = _rk4(u, v, params.k, params.h, params.r, dt)

        if not (np.isfinite(u) and np.isfinite(v)):
            raise OdeException(f"Non-finite state at t={step * dt:.6g}")

        if step % stride == 0 or step == n_steps:
            samples.append((step * dt, u, v))

    t, us, vs = zip(*samples)

    return OdeTrajectory(t, us, vs)


def integrate_ode_batch(k, h, r, u0, v0, t_max, dt=DEFAULT_DT):
    """Final states of many parameter sets, integrated side by side.

    All arguments broadcast against each other.

    Returns
    -------
    tuple of numpy.ndarray
        Final u and v.
    """
    k, h, r, u, v = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (k, h, r, u0, v0)))
    _check_start(u, v, t_max, dt)

    u, v = u.copy(), v.copy()

    for _ in range(int(round(t_max / dt))):
        u, v = _rk4(u, v, k, h, r, dt)

    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise OdeException("Non-finite state in batch integration.")

    log.debug("Integrated %d parameter sets to t=%g", u.size, t_max)

    return u, v
