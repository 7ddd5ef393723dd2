import numpy as np

from dataclasses import dataclass

from orangecontrib.freeboundary.core import ProblemKind




class GridException(Exception):
    pass




@dataclass(frozen=True)
class GridSpec:
    """Discretisation of a run on the front-fixed coordinate xi in [0, 1]."""

    n_cells: int = 400
    dt: float = 2.5e-4
    t_max: float = 100.0
    snapshot_stride: int = 4000

    MIN_CELLS = 16


    @property
    def d_xi(self):
        return 1.0 / self.n_cells


    @property
    def n_steps(self):
        return int(round(self.t_max / self.dt))


    def validate(self, s0=None):
        if int(self.n_cells) != self.n_cells or self.n_cells < GridSpec.MIN_CELLS:
            raise GridException(f"n_cells must be an integer >= {GridSpec.MIN_CELLS}, got {self.n_cells}")

        if not self.dt > 0:
            raise GridException(f"dt must be positive, got {self.dt}")

        if not self.t_max >= 0:
            raise GridException(f"t_max must be non-negative, got {self.t_max}")

        if int(self.snapshot_stride) != self.snapshot_stride or self.snapshot_stride < 1:
            raise GridException(f"snapshot_stride must be a positive integer, got {self.snapshot_stride}")

        # The initial front must span at least ten cells in physical units.
        if s0 is not None and s0 < 10 * self.d_xi:
            raise GridException(f"s0={s0} is below 10*d_xi={10 * self.d_xi}")


    def with_t_max(self, t_max):
        return GridSpec(self.n_cells, self.dt, t_max, self.snapshot_stride)


    def refined(self):
        """Halved dt and d_xi, same snapshot times."""
        return GridSpec(2 * self.n_cells, self.dt / 2.0, self.t_max, 2 * self.snapshot_stride)


    def as_dict(self):
        return {
            "n_cells": self.n_cells,
            "dt": self.dt,
            "t_max": self.t_max,
            "snapshot_stride": self.snapshot_stride,
        }




class SimState:
    """Front position and both profiles on the grid xi_i = i / n_cells.

    ``U`` and ``V`` hold all n_cells + 1 nodes, including the pinned zero
    at xi = 1 (and at xi = 0 for DFB).
    """

    def __init__(self, t, s, s_prime, U, V, step=0):
        self.t = float(t)
        self.s = float(s)
        self.s_prime = float(s_prime)
        self.U = np.asarray(U, dtype=float)
        self.V = np.asarray(V, dtype=float)
        self.step = int(step)


    @property
    def n_cells(self):
        return len(self.U) - 1


    @property
    def xi(self):
        return np.linspace(0.0, 1.0, self.n_cells + 1)


    @property
    def x(self):
        return self.s * self.xi


    @property
    def sup_u(self):
        return float(np.max(self.U))


    @property
    def sup_v(self):
        return float(np.max(self.V))


    @classmethod
    def initial(cls, params, kind, init, n_cells):
        xi = np.linspace(0.0, 1.0, n_cells + 1)
        U, V = init.sample(params.s0 * xi)

        U[-1] = V[-1] = 0.0

        if kind == ProblemKind.DFB:
            U[0] = V[0] = 0.0

        return cls(0.0, params.s0, 0.0, U, V)


    def copy(self):
        return SimState(self.t, self.s, self.s_prime, self.U.copy(), self.V.copy(), self.step)




class RunRecord:
    """Time series and profile snapshots of one run.

    Attributes
    ----------
    series : numpy.ndarray
        Rows (t, s, s', sup U, sup V).
    snapshots : list
        Tuples (t, s, U, V).
    failure : str or None
        Message of the error that ended the run early.
    warnings : list
        Monitored ceiling excursions, as text.
    """

    COLUMNS = ("t", "s", "s_prime", "sup_u", "sup_v")


    def __init__(self, params, kind, grid, init=None):
        self.params = params
        self.kind = kind
        self.grid = grid
        self.init = init

        self._rows = []
        self._series = None

        self.snapshots = []
        self.failure = None
        self.failed_step = None
        self.warnings = []
        self.state = None
        self.stopped_early = False


    def append(self, state):
        self._rows.append((state.t, state.s, state.s_prime, state.sup_u, state.sup_v))
        self._series = None


    def add_snapshot(self, state):
        self.snapshots.append((state.t, state.s, state.U.copy(), state.V.copy()))


    @property
    def series(self):
        if self._series is None:
            self._series = np.array(self._rows, dtype=float).reshape(-1, len(RunRecord.COLUMNS))

        return self._series


    @series.setter
    def series(self, values):
        values = np.asarray(values, dtype=float).reshape(-1, len(RunRecord.COLUMNS))
        self._rows = [tuple(row) for row in values]
        self._series = values


    def column(self, name):
        return self.series[:, RunRecord.COLUMNS.index(name)]


    @property
    def t(self):
        return self.column("t")


    @property
    def s(self):
        return self.column("s")


    def __len__(self):
        return len(self._rows)


    @property
    def final(self):
        """The last series row as a dict."""
        if len(self) == 0:
            return None

        return dict(zip(RunRecord.COLUMNS, self._rows[-1]))


    @property
    def complete(self):
        return self.failure is None
