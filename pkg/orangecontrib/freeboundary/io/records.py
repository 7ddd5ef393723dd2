import csv
import glob
import json
import logging
import os

import numpy as np

from orangecontrib.freeboundary import __version__
from orangecontrib.freeboundary.core import ModelParams
from orangecontrib.freeboundary.solver import GridSpec, RunRecord, SimState


log = logging.getLogger(__name__)




class CheckpointException(Exception):
    pass




CHECKPOINT_VERSION = 1

SERIES_FILE = "series.csv"
METADATA_FILE = "metadata.json"
CLASSIFICATION_FILE = "classification.json"
CHECKPOINT_FILE = "checkpoint.npz"
PROFILE_PATTERN = "profile_{index}.csv"

# Round-trip precision for doubles.
FLOAT_FORMAT = "%.17g"




def write_csv(path, columns, values):
    """Numeric table with a one-line header, written by ``numpy.savetxt``."""
    values = np.asarray(values, dtype=float).reshape(-1, len(columns))
    np.savetxt(path, values, delimiter=",", header=",".join(columns), comments="", fmt=FLOAT_FORMAT)


def read_csv(path, columns=None):
    with open(path, "rt") as f:
        header = f.readline().strip().split(",")

    if columns is not None and tuple(header) != tuple(columns):
        raise ValueError(f"'{path}' has header {header}, expected {list(columns)}")

    values = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)

    return header, values.reshape(-1, len(header))


def write_rows(path, columns, rows):
    """Mixed-type rows (dicts) under a fixed header; None becomes an empty cell."""
    with open(path, "wt", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)

        for row in rows:
            writer.writerow(["" if row[c] is None else _cell(row[c]) for c in columns])


def _cell(value):
    if isinstance(value, float):
        return repr(value)

    return value


def write_json(path, document):
    with open(path, "wt") as f:
        json.dump(document, f, indent=2, sort_keys=True)
        f.write("\n")


def read_json(path):
    with open(path, "rt") as f:
        return json.load(f)


def run_metadata(record, config_hash=None):
    return {
        "version": __version__,
        "kind": record.kind,
        "params": record.params.as_dict(),
        "grid": record.grid.as_dict(),
        "config_hash": config_hash,
        "samples": len(record),
        "snapshot_times": [t for t, _, _, _ in record.snapshots],
        "stopped_early": record.stopped_early,
        "failure": record.failure,
        "failed_step": record.failed_step,
        "warnings": list(record.warnings),
    }


def write_run(record, directory, config_hash=None):
    """Series, profile snapshots and metadata of a run.

    Returns
    -------
    list of str
        Paths written.
    """
    os.makedirs(directory, exist_ok=True)

    paths = [os.path.join(directory, SERIES_FILE)]
    write_csv(paths[0], RunRecord.COLUMNS, record.series)

    for index, (_, s, U, V) in enumerate(record.snapshots):
        path = os.path.join(directory, PROFILE_PATTERN.format(index=index))
        write_csv(path, ("x", "u", "v"), np.column_stack((s * np.linspace(0.0, 1.0, len(U)), U, V)))
        paths.append(path)

    paths.append(os.path.join(directory, METADATA_FILE))
    write_json(paths[-1], run_metadata(record, config_hash))

    log.info("Wrote %d files to %s", len(paths), directory)

    return paths


def read_run(directory):
    """RunRecord rebuilt from ``write_run`` output.

    Snapshots are restored on the front-fixed grid of each profile file.
    """
    try:
        meta = read_json(os.path.join(directory, METADATA_FILE))
        _, series = read_csv(os.path.join(directory, SERIES_FILE), RunRecord.COLUMNS)
    except (OSError, ValueError) as e:
        raise CheckpointException(f"Cannot read run in '{directory}': {e}") from None

    grid = GridSpec(**meta["grid"])
    record = RunRecord(ModelParams.from_dict(meta["params"]), meta["kind"], grid)
    record.series = series
    record.failure = meta.get("failure")
    record.failed_step = meta.get("failed_step")
    record.warnings = list(meta.get("warnings", []))
    record.stopped_early = meta.get("stopped_early", False)

    times = meta.get("snapshot_times", [])
    paths = sorted(glob.glob(os.path.join(directory, PROFILE_PATTERN.format(index="*"))),
                   key=lambda p: int(os.path.basename(p)[len("profile_"):-len(".csv")]))

    for t, path in zip(times, paths):
        _, values = read_csv(path, ("x", "u", "v"))
        record.snapshots.append((t, values[-1, 0], values[:, 1], values[:, 2]))

    return record


def save_checkpoint(record, path, config_hash):
    """Versioned ``.npz`` holding the series, snapshots and the last state."""
    state = record.state

    header = {
        "version": CHECKPOINT_VERSION,
        "config_hash": config_hash,
        "kind": record.kind,
        "params": record.params.as_dict(),
        "grid": record.grid.as_dict(),
        "state": {"t": state.t, "s": state.s, "s_prime": state.s_prime, "step": state.step},
        "warnings": list(record.warnings),
    }

    snapshots = record.snapshots

    np.savez(path,
             header=np.array(json.dumps(header)),
             series=record.series,
             U=state.U, V=state.V,
             snap_t=np.array([t for t, _, _, _ in snapshots]),
             snap_s=np.array([s for _, s, _, _ in snapshots]),
             snap_U=np.array([U for _, _, U, _ in snapshots]),
             snap_V=np.array([V for _, _, _, V in snapshots]))

    log.info("Checkpoint at step %d written to %s", state.step, path)


def load_checkpoint(path, config_hash=None, init=None):
    """RunRecord from ``save_checkpoint``, ready for ``simulate(resume=...)``.

    Raises
    ------
    CheckpointException
        On unreadable files, another format version or a config hash
        different from ``config_hash``.
    """
    try:
        with np.load(path) as data:
            header = json.loads(str(data["header"]))
            arrays = {name: data[name] for name in data.files if name != "header"}
    except (OSError, ValueError, KeyError) as e:
        raise CheckpointException(f"Cannot read checkpoint '{path}': {e}") from None

    if header.get("version") != CHECKPOINT_VERSION:
        raise CheckpointException(
            f"Checkpoint version {header.get('version')} is not {CHECKPOINT_VERSION}")

    if config_hash is not None and header["config_hash"] != config_hash:
        raise CheckpointException("Checkpoint was written for a different configuration.")

    record = RunRecord(ModelParams.from_dict(header["params"]), header["kind"],
                       GridSpec(**header["grid"]), init)
    record.series = arrays["series"]
    record.warnings = list(header["warnings"])

    for t, s, U, V in zip(arrays["snap_t"], arrays["snap_s"], arrays["snap_U"], arrays["snap_V"]):
        record.snapshots.append((float(t), float(s), U.copy(), V.copy()))

    state = header["state"]
    record.state = SimState(state["t"], state["s"], state["s_prime"], arrays["U"], arrays["V"],
                            state["step"])

    return record
