import logging

import numpy as np

from dataclasses import dataclass, field

from orangecontrib.freeboundary.core import InitialData, ProblemKind, lambda_threshold
from orangecontrib.freeboundary.barriers.supersolution import (
    DEFAULT_NT, DEFAULT_NX, DEFAULT_T_CHECK, MARGIN_TOL, SupersolutionException,
    SupersolutionParams, front_mu_limit, verify_supersolution, worst_margins
)


log = logging.getLogger(__name__)




class NoWitnessException(SupersolutionException):
    pass




# mu0 sits this far below the exact front limit of its witness.
MU_SAFETY = 1e-6

# Resolution of the screening pass.
SCREEN_N = 100




@dataclass(frozen=True)
class SearchSpec:
    """Logarithmic lattice of candidate (delta, gamma, K).

    K is lattice factor times max(sup u0, sup v0).
    """

    deltas: tuple = field(default_factory=lambda: tuple(np.geomspace(1e-3, 0.5, 10)))
    gammas: tuple = field(default_factory=lambda: tuple(np.geomspace(1e-3, 1.0, 10)))
    k_factors: tuple = field(default_factory=lambda: tuple(np.geomspace(1.0, 4.0, 7)))
    nt: int = DEFAULT_NT
    nx: int = DEFAULT_NX
    t_check: float = DEFAULT_T_CHECK


    def bounds(self):
        return {
            "delta": [min(self.deltas), max(self.deltas)],
            "gamma": [min(self.gammas), max(self.gammas)],
            "K_factor": [min(self.k_factors), max(self.k_factors)],
        }




def _screen(p, spec):
    margins = worst_margins(p, 0.0, SCREEN_N, SCREEN_N, spec.t_check)
    return min(margins["pde_u"], margins["pde_v"], margins["initial"]) >= -MARGIN_TOL


def search_mu0(params, kind=ProblemKind.DFB, init=None, spec=None):
    """Largest certified vanishing bound mu0 over a lattice of upper solutions.

    Every lattice point passing the mu-free inequalities on a coarse
    screen yields the largest mu its front inequality allows. Candidates
    are confirmed on the full sample grid and on a grid refined twice in
    both directions, best first.

    Parameters
    ----------
    params : ModelParams
    kind : str
        Only ``ProblemKind.DFB`` is supported.
    init : InitialData, optional
        The DFB preset on [0, s0] by default.
    spec : SearchSpec, optional

    Returns
    -------
    tuple
        (mu0, witness) with witness a ``SupersolutionParams``.

    Raises
    ------
    NoWitnessException
        If s0 >= lambda or no lattice point passes.
    """
    if kind != ProblemKind.DFB:
        raise SupersolutionException(f"Upper solutions are only built for DFB, got {kind}")

    if spec is None:
        spec = SearchSpec()

    if init is None:
        init = InitialData.preset(kind, params.s0)

    lam = lambda_threshold(params, kind)

    if params.s0 >= lam:
        raise NoWitnessException(
            f"no witness can exist: s0={params.s0:.6g} >= lambda={lam:.6g}")

    scale = max(init.sup_u, init.sup_v)
    times = np.linspace(0.0, spec.t_check, 2 * spec.nt)

    candidates = []

    for delta in spec.deltas:
        for gamma in spec.gammas:
            for factor in spec.k_factors:
                p = SupersolutionParams(float(delta), float(gamma), float(factor * scale), params, init)

                if p.front_bound >= lam or not _screen(p, spec):
                    continue

                candidates.append((front_mu_limit(p, times), p))

    log.info("%d lattice points pass the screen", len(candidates))

    candidates.sort(key=lambda item: -item[0])

    for limit, p in candidates:
        mu0 = limit * (1.0 - MU_SAFETY)

        report = verify_supersolution(p, mu0, nt=spec.nt, nx=spec.nx, t_check=spec.t_check)
        refined = verify_supersolution(p, mu0, nt=2 * spec.nt, nx=2 * spec.nx, t_check=spec.t_check)

        if report["passed"] and refined["passed"]:
            log.info("Witness delta=%.4g gamma=%.4g K=%.4g certifies mu0=%.6g",
                     p.delta, p.gamma, p.K, mu0)
            return mu0, p

        log.debug("Candidate %s failed confirmation", p.as_dict())

    raise NoWitnessException(f"no witness found in lattice {spec.bounds()}")


def certificate(witness, mu0, spec=None):
    """JSON-ready certificate of a witness, including the refined check."""
    if spec is None:
        spec = SearchSpec()

    report = verify_supersolution(witness, mu0, nt=spec.nt, nx=spec.nx, t_check=spec.t_check)
    refined = verify_supersolution(witness, mu0, nt=2 * spec.nt, nx=2 * spec.nx,
                                   t_check=spec.t_check)

    result = witness.as_dict()
    result.update({
        "mu0": mu0,
        "worst_margins": report["worst_margins"],
        "grid": {"nt": spec.nt, "nx": spec.nx},
        "refined": {"passed": refined["passed"], "worst_margins": refined["worst_margins"]},
        "front_bound": report["front_bound"],
        "lambda": report["lambda"],
        "below_threshold": report["below_threshold"],
        "passed": report["passed"] and refined["passed"],
        "label": report["label"],
    })

    return result
