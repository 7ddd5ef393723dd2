from typing import List, Optional

from pydantic import (
    BaseModel, ConfigDict, NonNegativeFloat, NonNegativeInt, PositiveFloat, PositiveInt,
    ValidationError, conint, model_validator
)

from orangecontrib.freeboundary.solver import GridSpec




class ConfigGroup(BaseModel):
    # JSON literals only: "1.5" is not a number here, 1 is.
    model_config = ConfigDict(extra="forbid", strict=True, allow_inf_nan=False)




class ProblemGroup(ConfigGroup):
    kind: str


class ParamsGroup(ConfigGroup):
    k: PositiveFloat
    h: PositiveFloat
    r: PositiveFloat
    D: PositiveFloat
    mu: PositiveFloat
    rho: PositiveFloat
    s0: PositiveFloat


class InitGroup(ConfigGroup):
    preset: Optional[str]
    amplitude: PositiveFloat
    table: Optional[str]


class GridGroup(ConfigGroup):
    n_cells: conint(strict=True, ge=GridSpec.MIN_CELLS)
    dt: PositiveFloat
    t_max: NonNegativeFloat
    snapshot_stride: PositiveInt


class ClassifyGroup(ConfigGroup):
    tol_vanish: NonNegativeFloat
    tol_stall: Optional[NonNegativeFloat]


class OutputGroup(ConfigGroup):
    dir: str
    plots: bool




class ThresholdGroup(ConfigGroup):
    mu_lo: PositiveFloat
    mu_hi: PositiveFloat
    rel_tol: PositiveFloat
    max_retries: NonNegativeInt


    @model_validator(mode="after")
    def _ordered(self):
        if self.mu_lo >= self.mu_hi:
            raise ValueError("threshold needs 0 < mu_lo < mu_hi")

        if self.rel_tol >= 1:
            raise ValueError("threshold.rel_tol must lie in (0, 1)")

        return self


class SteadyGroup(ConfigGroup):
    L: PositiveFloat
    m: conint(strict=True, ge=200)
    window: List[NonNegativeFloat]
    slack: NonNegativeFloat
    run: Optional[str]


    @model_validator(mode="after")
    def _window_inside(self):
        if not (len(self.window) == 2 and self.window[0] < self.window[1] <= self.L):
            raise ValueError("steady.window must be [x_lo, x_hi] inside [0, L]")

        return self


class OdeGroup(ConfigGroup):
    u0: PositiveFloat
    v0: PositiveFloat
    t_max: NonNegativeFloat
    dt: PositiveFloat
    J: PositiveInt


class BarrierGroup(ConfigGroup):
    delta_min: PositiveFloat
    delta_max: PositiveFloat
    n_delta: PositiveInt
    gamma_min: PositiveFloat
    gamma_max: PositiveFloat
    n_gamma: PositiveInt
    k_min: PositiveFloat
    k_max: PositiveFloat
    n_k: PositiveInt
    nt: PositiveInt
    nx: PositiveInt
    t_check: PositiveFloat


    @model_validator(mode="after")
    def _lattice_ranges(self):
        for name in ("delta", "gamma", "k"):
            if getattr(self, f"{name}_min") > getattr(self, f"{name}_max"):
                raise ValueError(f"barrier lattice for {name} needs min <= max")

        return self


class SweepGroup(ConfigGroup):
    mus: List[PositiveFloat]
    s0s: List[PositiveFloat]
    stop_on_certificate: bool


    @model_validator(mode="after")
    def _some_mus(self):
        if not self.mus:
            raise ValueError("sweep.mus must be a non-empty list")

        return self




# Checked for every command.
BASE_GROUPS = {
    "problem": ProblemGroup,
    "params": ParamsGroup,
    "init": InitGroup,
    "grid": GridGroup,
    "classify": ClassifyGroup,
    "output": OutputGroup,
}

# Checked only when their command runs.
COMMAND_GROUPS = {
    "threshold": ThresholdGroup,
    "steady": SteadyGroup,
    "ode": OdeGroup,
    "barrier": BarrierGroup,
    "sweep": SweepGroup,
}




def describe(group, error):
    """One line per failed field of a ``ValidationError``."""
    lines = []

    for item in error.errors():
        where = ".".join([group] + [str(part) for part in item["loc"]])
        lines.append(f"{where}: {item['msg']} (got {item['input']!r})")

    return "; ".join(lines)


def check_group(group, values, model):
    """Parse ``values`` with ``model``; returns the error text or None."""
    try:
        model(**values)
    except ValidationError as e:
        return describe(group, e)

    return None
