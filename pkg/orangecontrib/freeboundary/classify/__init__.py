from .verdict import (
    DEFAULT_TOL_VANISH, Classification, ClassifyException, Verdict, classify_run
)
from .threshold import (
    NoBracketException, NonMonotoneException, NoThresholdException, ThresholdBracket,
    UndeterminedException, check_monotone, find_mu_star, probe
)
from .sweep import COLUMNS as SWEEP_COLUMNS, ERROR, build_plan, plan_key, run_entry, sweep
