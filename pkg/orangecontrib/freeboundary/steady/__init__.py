from .halfline import (
    HalfLineGrid, NewtonException, SteadyException, slope_at_origin, solve_coupled_halfline,
    solve_logistic_halfline
)
from .profiles import (
    BarrierOrderException, SteadyProfiles, build_barriers, check_sandwich, solve_steady_system
)
