import logging
import os

import numpy as np

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


log = logging.getLogger(__name__)




class PlotException(Exception):
    pass




class PlotFormats:
    SVG = "svg"
    PDF = "pdf"




def _save(fig, path):
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    log.debug("Plot written to %s", path)
    return path


def _final_profile(record):
    _, s, U, V = record.snapshots[-1]
    return s * np.linspace(0.0, 1.0, len(U)), U, V


def plot_front(record, lam, path):
    """s(t) with the threshold length as a horizontal guide."""
    fig, ax = plt.subplots(figsize=(6, 4))

    t, s = record.column("t"), record.column("s")
    ax.plot(t, s, marker="." if len(t) == 1 else None, label="s(t)")

    if lam is not None:
        ax.axhline(lam, color="gray", linestyle="--", label="threshold")

    ax.set_xlabel("t")
    ax.set_ylabel("front position")
    ax.legend()

    return _save(fig, path)


def plot_profiles(record, path):
    fig, ax = plt.subplots(figsize=(6, 4))

    x, U, V = _final_profile(record)
    ax.plot(x, U, label="u")
    ax.plot(x, V, label="v")

    ax.set_xlabel("x")
    ax.set_title(f"t = {record.snapshots[-1][0]:g}")
    ax.legend()

    return _save(fig, path)


def plot_barriers(profiles, path, record=None, window=None):
    """Barrier curves, with the final profiles of ``record`` in between."""
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)

    x = profiles.x

    if window is not None:
        mask = (x >= window[0]) & (x <= window[1])
    else:
        mask = np.ones_like(x, dtype=bool)

    curves = ((axes[0], "u", profiles.u_low, profiles.u_bar),
              (axes[1], "v", profiles.v_low, profiles.v_bar))

    for index, (ax, name, low, bar) in enumerate(curves):
        ax.plot(x[mask], bar[mask], color="tab:red", label=f"upper {name}")
        ax.plot(x[mask], low[mask], color="tab:blue", label=f"lower {name}")

        if record is not None:
            xr, U, V = _final_profile(record)
            keep = xr <= x[mask][-1]
            ax.plot(xr[keep], (U, V)[index][keep], color="black", label=name)

        ax.set_xlabel("x")
        ax.legend()

    return _save(fig, path)


def plot_trajectory(trajectory, path, limit=None):
    fig, ax = plt.subplots(figsize=(6, 4))

    ax.plot(trajectory.t, trajectory.u, label="u")
    ax.plot(trajectory.t, trajectory.v, label="v")

    if limit is not None:
        for value in limit:
            ax.axhline(value, color="gray", linestyle=":")

    ax.set_xlabel("t")
    ax.legend()

    return _save(fig, path)


def emit_plots(out_dir, record=None, lam=None, barriers=None, trajectory=None, limit=None,
               window=None, fmt=PlotFormats.SVG):
    """Write every plot the given artifacts allow into ``out_dir``.

    Returns
    -------
    list of str
        Paths written.
    """
    if record is None and barriers is None and trajectory is None:
        raise PlotException("Nothing to plot: no record, barriers or trajectory given.")

    os.makedirs(out_dir, exist_ok=True)
    paths = []

    if record is not None and len(record):
        paths.append(plot_front(record, lam, os.path.join(out_dir, f"front.{fmt}")))

        if record.snapshots:
            paths.append(plot_profiles(record, os.path.join(out_dir, f"profiles.{fmt}")))

    if barriers is not None:
        with_record = record if record is not None and record.snapshots else None
        paths.append(plot_barriers(barriers, os.path.join(out_dir, f"barriers.{fmt}"),
                                   with_record, window))

    if trajectory is not None:
        paths.append(plot_trajectory(trajectory, os.path.join(out_dir, f"trajectory.{fmt}"), limit))

    return paths
