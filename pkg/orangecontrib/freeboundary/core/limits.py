import math

from orangecontrib.freeboundary.core.params import ProblemKind, Regime




class RegimeException(Exception):
    pass




def lambda_threshold(params, kind):
    """Habitat length beyond which spreading is certain.

    (pi/2)*min(1, sqrt(D/r)) for NFB and pi*min(1, sqrt(D/r)) for DFB.
    A front that exceeds this length can never come to rest.
    """
    base = math.pi * min(1.0, math.sqrt(params.D / params.r))

    if kind == ProblemKind.NFB:
        return base / 2.0

    if kind == ProblemKind.DFB:
        return base

    raise ValueError(f"Unknown problem kind '{kind}'.")


def classify_regime(params):
    h, k = params.h, params.k

    if h < 1 and k < 1:
        return Regime.WeakCompetition

    # Closed inequalities on the boundary lines h = 1 and k = 1.
    if k < 1 <= h:
        return Regime.UWins

    if h < 1 <= k:
        return Regime.VWins

    return Regime.Uncovered


def coexistence_limit(params):
    """Long-time limit (u, v) of a spreading solution on compact sets."""
    regime = classify_regime(params)

    if regime == Regime.WeakCompetition:
        denom = 1.0 - params.h * params.k
        return (1.0 - params.k) / denom, (1.0 - params.h) / denom

    if regime == Regime.UWins:
        return 1.0, 0.0

    if regime == Regime.VWins:
        return 0.0, 1.0

    raise RegimeException(
        f"no proven limit for h={params.h}, k={params.k} (strong competition)")


def a_priori_bound(init):
    """Ceiling M for both species, max{1, sup u0, sup v0}.

    Comparison with the logistic flow u' = u(1 - u): solutions starting
    above 1 decrease, solutions below stay below 1.
    """
    return max(1.0, init.sup_u, init.sup_v)
