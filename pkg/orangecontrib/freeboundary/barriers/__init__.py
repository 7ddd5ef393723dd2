from .supersolution import (
    SupersolutionException, SupersolutionParams, eval_barrier, front_mu_limit,
    verify_supersolution, worst_margins
)
from .search import NoWitnessException, SearchSpec, certificate, search_mu0
