import Orange.data
from Orange.widgets import gui, settings, widget
from Orange.widgets.utils.concurrent import ConcurrentWidgetMixin

from orangecontrib.freeboundary.classify import ClassifyException, classify_run
from orangecontrib.freeboundary.core import (
    InitialData, InitialDataException, ModelParams, ParamsException, ProblemKind, lambda_threshold
)
from orangecontrib.freeboundary.io.table import profiles_to_table, record_to_table
from orangecontrib.freeboundary.solver import GridException, GridSpec, SolverException, simulate




class FreeBoundaryRunner:
    @staticmethod
    def run(params, kind, grid, state):
        state.set_status("Simulating...")

        init = InitialData.preset(kind, params.s0)

        try:
            record = simulate(params, kind, init, grid)
        except SolverException as e:
            # The partial record still goes out.
            return e.record, None, str(e)

        return record, classify_run(record, lambda_threshold(params, kind)), None




class OWFreeBoundary(widget.OWWidget, ConcurrentWidgetMixin):
    name = "Free Boundary"
    description = "Simulate two competing species spreading through a moving habitat."
    keywords = "free boundary, competition, spreading"
    id = "orangecontrib.freeboundary.widgets.owfreeboundary.OWFreeBoundary"


    class Outputs:
        series = widget.Output("Series", Orange.data.Table, default=True)
        profiles = widget.Output("Profiles", Orange.data.Table)


    want_main_area = False
    want_control_area = True
    resizing_enabled = False

    KINDS = (ProblemKind.NFB, ProblemKind.DFB)

    DEFAULT_KIND_INDEX = 1
    DEFAULT_K = 0.5
    DEFAULT_H = 0.5
    DEFAULT_R = 1.0
    DEFAULT_D = 1.0
    DEFAULT_MU = 1.0
    DEFAULT_RHO = 1.0
    DEFAULT_S0 = 1.0
    DEFAULT_N_CELLS = 100
    DEFAULT_DT = 1e-3
    DEFAULT_T_MAX = 10.0

    autocommit = settings.Setting(True)

    kind_index = settings.Setting(DEFAULT_KIND_INDEX)
    k = settings.Setting(DEFAULT_K)
    h = settings.Setting(DEFAULT_H)
    r = settings.Setting(DEFAULT_R)
    D = settings.Setting(DEFAULT_D)
    mu = settings.Setting(DEFAULT_MU)
    rho = settings.Setting(DEFAULT_RHO)
    s0 = settings.Setting(DEFAULT_S0)
    n_cells = settings.Setting(DEFAULT_N_CELLS)
    dt = settings.Setting(DEFAULT_DT)
    t_max = settings.Setting(DEFAULT_T_MAX)


    class Error(widget.OWWidget.Error):
        invalid_input = widget.Msg("{}")
        solver_failed = widget.Msg("Run stopped early: {}")


    class Warning(widget.OWWidget.Warning):
        ceiling = widget.Msg("{} ceiling excursion(s), first: {}")


    class Information(widget.OWWidget.Information):
        verdict = widget.Msg("{} (front at {:.4g}, threshold {:.4g})")


    def __init__(self):
        widget.OWWidget.__init__(self)
        ConcurrentWidgetMixin.__init__(self)

        self.record = None
        self.classification = None

        box = gui.vBox(self.controlArea, "Problem")
        gui.comboBox(box, self, "kind_index", label="Left boundary:",
                     items=["No flux (NFB)", "Dirichlet (DFB)"], callback=self._invalidate)

        box = gui.vBox(self.controlArea, "Parameters")

        for attr, label in (("k", "k:"), ("h", "h:"), ("r", "r:"), ("D", "D:"),
                            ("mu", "mu:"), ("rho", "rho:"), ("s0", "s0:")):
            gui.doubleSpin(box, self, attr, minv=0.0, maxv=1e3, step=0.05, decimals=4,
                           label=label, callback=self._invalidate)

        box = gui.vBox(self.controlArea, "Grid")
        gui.spin(box, self, "n_cells", minv=GridSpec.MIN_CELLS, maxv=10000, step=10,
                 label="Cells:", callback=self._invalidate)
        gui.doubleSpin(box, self, "dt", minv=1e-6, maxv=1.0, step=1e-4, decimals=6,
                       label="Time step:", callback=self._invalidate)
        gui.doubleSpin(box, self, "t_max", minv=0.0, maxv=1e4, step=1.0, decimals=2,
                       label="Final time:", callback=self._invalidate)

        gui.rubber(self.controlArea)

        gui.auto_commit(self.controlArea, self, "autocommit", "Run")

        self.commit.now()


    @property
    def kind(self):
        return OWFreeBoundary.KINDS[self.kind_index]


    def params(self):
        return ModelParams(k=self.k, h=self.h, r=self.r, D=self.D, mu=self.mu, rho=self.rho,
                           s0=self.s0)


    def grid(self):
        return GridSpec(int(self.n_cells), self.dt, self.t_max,
                        snapshot_stride=max(1, int(round(1.0 / self.dt))))


    def _invalidate(self):
        self.commit.deferred()


    @gui.deferred
    def commit(self):
        self.clear_messages()

        params, grid = self.params(), self.grid()

        try:
            params.validate(strict=False)
            grid.validate(params.s0)
        except (ParamsException, GridException) as e:
            self.Error.invalid_input(str(e))
            self._send(None, None)
            return

        self.start(FreeBoundaryRunner.run, params, self.kind, grid)


    def on_partial_result(self, _):
        pass


    def on_done(self, result):
        record, classification, failure = result

        if failure is not None:
            self.Error.solver_failed(failure)

        if record is not None and record.warnings:
            self.Warning.ceiling(len(record.warnings), record.warnings[0])

        if classification is not None:
            self.Information.verdict(classification.verdict, classification.final_s,
                                     classification.lam)

        self._send(record, classification)


    def on_exception(self, ex):
        if isinstance(ex, (ParamsException, GridException, InitialDataException, ClassifyException)):
            self.Error.invalid_input(str(ex))
            self._send(None, None)
        else:
            raise ex


    def _send(self, record, classification):
        self.record = record
        self.classification = classification

        if record is None or len(record) == 0:
            self.Outputs.series.send(None)
            self.Outputs.profiles.send(None)
            return

        self.Outputs.series.send(record_to_table(record))
        self.Outputs.profiles.send(profiles_to_table(record) if record.snapshots else None)


    def onDeleteWidget(self):
        self.shutdown()
        super().onDeleteWidget()




if __name__ == "__main__":  # pragma: no cover
    from Orange.widgets.utils.widgetpreview import WidgetPreview
    WidgetPreview(OWFreeBoundary).run()
