from .state import GridException, GridSpec, RunRecord, SimState
from .stepper import (
    BlowUpException, FrontRetreatException, PositivityException, SolverException,
    StabilityException, boundary_flux, checked_front_speed, front_speed, stability_limit,
    transformed_step, within_stability_limit
)
from .simulate import simulate
