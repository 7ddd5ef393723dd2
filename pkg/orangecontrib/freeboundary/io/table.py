import numpy as np

import Orange.data

from orangecontrib.freeboundary.solver import RunRecord
from orangecontrib.freeboundary.steady import SteadyProfiles




def columns_to_table(columns, values, name=None):
    """Table of continuous attributes, one per column name."""
    domain = Orange.data.Domain([Orange.data.ContinuousVariable(name=c) for c in columns])
    table = Orange.data.Table.from_numpy(domain, np.asarray(values, dtype=float).reshape(-1, len(columns)))

    if name is not None:
        table.name = name

    return table


def record_to_table(record):
    """The (t, s, s', sup u, sup v) series of a run."""
    return columns_to_table(RunRecord.COLUMNS, record.series, name="series")


def profiles_to_table(record, index=-1):
    """Snapshot ``index`` of a run in physical coordinates x, u, v."""
    t, s, U, V = record.snapshots[index]
    x = s * np.linspace(0.0, 1.0, len(U))

    return columns_to_table(("x", "u", "v"), np.column_stack((x, U, V)), name=f"profiles t={t:g}")


def barriers_to_table(profiles):
    return columns_to_table(SteadyProfiles.COLUMNS, profiles.as_array(), name="barriers")
