from .ode import OdeException, OdeState, OdeTrajectory, integrate_ode, integrate_ode_batch
from .iteration import IterationException, IterationSeq, closed_form, iterate_bounds
