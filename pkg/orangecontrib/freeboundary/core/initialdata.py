import numpy as np

from dataclasses import dataclass
from scipy.interpolate import interp1d

from orangecontrib.freeboundary.core.params import ProblemKind
from orangecontrib.freeboundary.utils import EnumController




class InitialDataException(Exception):
    pass




class Preset:
    CosineBump = "CosineBump"
    SineBump = "SineBump"
    Table = "Table"




class InitialData:
    """Initial profiles u0, v0 sampled on [0, s0].

    Parameters
    ----------
    x : array_like
        Increasing sample positions, x[0] = 0 and x[-1] = s0.
    u0, v0 : array_like
        Non-negative samples of the two species.
    preset : str
        One of the ``Preset`` values, recorded for provenance.
    """

    DEFAULT_AMPLITUDE = 0.5
    DEFAULT_SAMPLES = 401

    # Tolerance on the compatibility conditions of tabulated data.
    TOLERANCE = 1e-8


    def __init__(self, x, u0, v0, preset=Preset.Table):
        self.x = np.asarray(x, dtype=float)
        self.u0 = np.asarray(u0, dtype=float)
        self.v0 = np.asarray(v0, dtype=float)
        self.preset = preset

        if not (self.x.ndim == self.u0.ndim == self.v0.ndim == 1):
            raise InitialDataException("Initial data must be one dimensional.")

        if not (self.x.shape == self.u0.shape == self.v0.shape):
            raise InitialDataException("x, u0 and v0 must have the same length.")

        if len(self.x) < 3:
            raise InitialDataException("At least three samples are required.")

        if self.x[0] != 0.0 or np.any(np.diff(self.x) <= 0):
            raise InitialDataException("Samples must start at x = 0 and increase strictly.")


    @property
    def s0(self):
        return float(self.x[-1])


    @property
    def sup_u(self):
        return float(np.max(self.u0))


    @property
    def sup_v(self):
        return float(np.max(self.v0))


    @staticmethod
    def default_preset(kind):
        return Preset.CosineBump if kind == ProblemKind.NFB else Preset.SineBump


    @staticmethod
    def preset_profile(preset, xs, s0, amplitude=DEFAULT_AMPLITUDE):
        if preset == Preset.CosineBump:
            return amplitude * np.cos(np.pi * xs / (2.0 * s0))

        if preset == Preset.SineBump:
            return amplitude * np.sin(np.pi * xs / s0)

        raise InitialDataException(f"'{preset}' is not a generated preset.")


    @classmethod
    def preset(cls, kind, s0, preset=None, amplitude=DEFAULT_AMPLITUDE,
               n=DEFAULT_SAMPLES, amplitude_v=None):
        """Smooth one-parameter initial data compatible with ``kind``.

        NFB uses a quarter cosine (zero slope at 0), DFB a half sine (zero
        value at 0). Endpoint values are set exactly.
        """
        if preset is None:
            preset = cls.default_preset(kind)

        if preset != cls.default_preset(kind):
            raise InitialDataException(f"Preset '{preset}' is incompatible with {kind}.")

        if amplitude_v is None:
            amplitude_v = amplitude

        if amplitude <= 0 or amplitude_v <= 0:
            raise InitialDataException("Preset amplitudes must be positive.")

        xs = np.linspace(0.0, s0, n)
        u0 = cls.preset_profile(preset, xs, s0, amplitude)
        v0 = cls.preset_profile(preset, xs, s0, amplitude_v)

        u0[-1] = v0[-1] = 0.0

        if kind == ProblemKind.DFB:
            u0[0] = v0[0] = 0.0

        return cls(xs, u0, v0, preset=preset)


    @classmethod
    def from_table(cls, path):
        """Read a CSV table with the header ``x,u0,v0``."""
        try:
            data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        except (OSError, ValueError) as e:
            raise InitialDataException(f"Cannot read initial data table '{path}': {e}") from None

        if data.shape[1] != 3:
            raise InitialDataException(f"'{path}' must have the three columns x,u0,v0.")

        return cls(data[:, 0], data[:, 1], data[:, 2], preset=Preset.Table)


    def validate(self, kind, strict=True):
        """Check the compatibility conditions for ``kind``.

        Parameters
        ----------
        kind : str
            ``ProblemKind.NFB`` or ``ProblemKind.DFB``.
        strict : bool
            Require both profiles to be positive inside (0, s0). The solver
            runs with ``strict=False`` so a species may be absent.
        """
        if not EnumController.contains(ProblemKind, kind):
            raise InitialDataException(f"Unknown problem kind '{kind}'.")

        tol = InitialData.TOLERANCE

        for name, profile in (("u0", self.u0), ("v0", self.v0)):
            if not np.all(np.isfinite(profile)):
                raise InitialDataException(f"{name} contains non-finite values.")

            if np.any(profile < 0):
                raise InitialDataException(f"{name} must be non-negative.")

            if strict and np.any(profile[1:-1] <= 0):
                raise InitialDataException(f"{name} must be positive inside (0, s0).")

            if abs(profile[-1]) > tol:
                raise InitialDataException(f"{name}(s0) must vanish.")

            if kind == ProblemKind.DFB and abs(profile[0]) > tol:
                raise InitialDataException(f"{name}(0) must vanish for {kind}.")

            if kind == ProblemKind.NFB:
                # One-sided second order slope at x = 0.
                dx = self.x[1] - self.x[0]
                scale = max(1.0, float(np.max(profile)))
                slope = (-3 * profile[0] + 4 * profile[1] - profile[2]) / (2 * dx)

                if abs(slope) > tol + 10 * dx * scale / self.s0:
                    raise InitialDataException(f"{name}'(0) must vanish for {kind}.")


    def sample(self, xs):
        """Linear interpolation onto ``xs``, zero beyond s0."""
        xs = np.asarray(xs, dtype=float)

        u = interp1d(self.x, self.u0, bounds_error=False, fill_value=0.0)(xs)
        v = interp1d(self.x, self.v0, bounds_error=False, fill_value=0.0)(xs)

        return u, v


    def rescaled(self, s0):
        """The same shapes stretched onto [0, s0]."""
        scale = s0 / self.s0
        return InitialData(self.x * scale, self.u0.copy(), self.v0.copy(), preset=self.preset)




@dataclass(frozen=True)
class InitialSpec:
    """How to build initial data for any s0 (used when s0 varies)."""

    preset: str = None
    amplitude: float = InitialData.DEFAULT_AMPLITUDE
    table: str = None


    def build(self, kind, s0):
        if self.table is not None or self.preset == Preset.Table:
            if self.table is None:
                raise InitialDataException("Preset 'Table' requires a table path.")

            data = InitialData.from_table(self.table)

            if abs(data.s0 - s0) > 1e-12 * max(1.0, s0):
                data = data.rescaled(s0)

            return data

        return InitialData.preset(kind, s0, preset=self.preset, amplitude=self.amplitude)
