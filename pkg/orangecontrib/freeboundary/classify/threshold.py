import logging
import math

from orangecontrib.freeboundary.core import lambda_threshold
from orangecontrib.freeboundary.solver import simulate
from orangecontrib.freeboundary.classify.verdict import (
    DEFAULT_TOL_VANISH, ClassifyException, Verdict, classify_run
)


log = logging.getLogger(__name__)




class NoThresholdException(ClassifyException):
    pass


class NoBracketException(ClassifyException):
    pass


class NonMonotoneException(ClassifyException):
    pass


class UndeterminedException(ClassifyException):
    pass




DEFAULT_BRACKET = (1e-3, 1e2)
DEFAULT_REL_TOL = 0.05

# Undetermined probes are repeated with t_max doubled up to this many times.
MAX_RETRIES = 3




class ThresholdBracket:
    """Interval [mu_lo, mu_hi] around the critical expansion coefficient.

    Attributes
    ----------
    mu_lo : float
        Largest probed mu with a vanishing verdict.
    mu_hi : float
        Smallest probed mu with a spreading verdict.
    history : list
        Every probe as a (mu, verdict) pair, in probing order.
    """

    def __init__(self, mu_lo, mu_hi, history=None):
        self.mu_lo = float(mu_lo)
        self.mu_hi = float(mu_hi)
        self.history = [] if history is None else list(history)


    @property
    def width(self):
        return self.mu_hi - self.mu_lo


    @property
    def rel_width(self):
        return self.width / self.mu_hi


    def as_dict(self):
        return {
            "mu_lo": self.mu_lo,
            "mu_hi": self.mu_hi,
            "history": [[mu, verdict] for mu, verdict in self.history],
        }


    @staticmethod
    def from_dict(values):
        return ThresholdBracket(values["mu_lo"], values["mu_hi"],
                                [(float(mu), verdict) for mu, verdict in values["history"]])


    def __repr__(self):
        return f"ThresholdBracket(mu_lo={self.mu_lo:.6g}, mu_hi={self.mu_hi:.6g}, probes={len(self.history)})"




def check_monotone(history):
    """Raise if some mu spreads while a larger one vanishes."""
    spreading = [mu for mu, verdict in history if verdict == Verdict.SpreadingCertified]
    vanishing = [mu for mu, verdict in history if verdict == Verdict.VanishingHeuristic]

    if spreading and vanishing and min(spreading) <= max(vanishing):
        raise NonMonotoneException(
            f"non-monotone outcome: spreading at mu={min(spreading):.6g}"
            f" but vanishing at mu={max(vanishing):.6g}")


def _lookup(history, mu):
    for probed, verdict in history:
        if math.isclose(probed, mu, rel_tol=1e-12):
            return verdict

    return None


def probe(params, mu, kind, init, grid, tol_vanish=DEFAULT_TOL_VANISH, tol_stall=None,
          max_retries=MAX_RETRIES):
    """Classify one run at ``mu``, doubling t_max on Undetermined verdicts.

    Runs stop as soon as the front crosses the threshold length.

    Returns
    -------
    Classification
        Never Undetermined.

    Raises
    ------
    UndeterminedException
        If the verdict is still Undetermined after ``max_retries`` retries.
    """
    params = params.with_mu(mu)
    lam = lambda_threshold(params, kind)

    for attempt in range(max_retries + 1):
        run_grid = grid.with_t_max(grid.t_max * 2 ** attempt)

        record = simulate(params, kind, init, run_grid, stop_above=lam)
        classification = classify_run(record, lam, tol_vanish, tol_stall)

        if classification.verdict != Verdict.Undetermined:
            return classification

        log.info("mu=%.6g undetermined at t_max=%g, retrying", mu, run_grid.t_max)

    raise UndeterminedException(
        f"mu={mu:.6g} still undetermined at t_max={grid.t_max * 2 ** max_retries:g}")


def find_mu_star(params, kind, init, grid, bracket0=DEFAULT_BRACKET, rel_tol=DEFAULT_REL_TOL,
                 tol_vanish=DEFAULT_TOL_VANISH, tol_stall=None, max_retries=MAX_RETRIES,
                 history=None, on_probe=None):
    """Bracket the critical mu by geometric bisection.

    Parameters
    ----------
    params : ModelParams
        Model constants; ``mu`` is ignored.
    kind : str
    init : InitialData
    grid : GridSpec
    bracket0 : tuple
        Initial (vanishing, spreading) pair of mu values.
    rel_tol : float
        Stop once width / mu_hi <= rel_tol.
    history : list, optional
        (mu, verdict) pairs of an interrupted search. Probes found there
        are not simulated again, and new verdicts must stay monotone
        together with them.
    on_probe : callable, optional
        Called with the current ``ThresholdBracket`` after every new probe.

    Returns
    -------
    ThresholdBracket
    """
    lam = lambda_threshold(params, kind)

    if params.s0 >= lam:
        raise NoThresholdException(
            f"no threshold exists: s0={params.s0:.6g} >= lambda={lam:.6g}, every mu spreads")

    mu_lo, mu_hi = (float(mu) for mu in bracket0)

    if not 0 < mu_lo < mu_hi:
        raise ClassifyException(f"Bracket must satisfy 0 < mu_lo < mu_hi, got {bracket0}")

    if not 0 < rel_tol < 1:
        raise ClassifyException(f"rel_tol must lie in (0, 1), got {rel_tol}")

    prior = [] if history is None else list(history)
    bracket = ThresholdBracket(mu_lo, mu_hi)

    def verdict_at(mu):
        verdict = _lookup(prior, mu)

        if verdict is None:
            verdict = probe(params, mu, kind, init, grid, tol_vanish, tol_stall,
                            max_retries).verdict
            log.info("Probe mu=%.6g: %s", mu, verdict)
            bracket.history.append((mu, verdict))
            check_monotone(prior + bracket.history)

            if on_probe is not None:
                on_probe(bracket)

        else:
            log.info("Probe mu=%.6g: %s (from history)", mu, verdict)
            bracket.history.append((mu, verdict))
            check_monotone(prior + bracket.history)

        return verdict

    if verdict_at(mu_lo) != Verdict.VanishingHeuristic:
        raise NoBracketException(f"no bracket: mu={mu_lo:.6g} does not vanish")

    if verdict_at(mu_hi) != Verdict.SpreadingCertified:
        raise NoBracketException(f"no bracket: mu={mu_hi:.6g} does not spread")

    while bracket.rel_width > rel_tol:
        mid = math.sqrt(bracket.mu_lo * bracket.mu_hi)

        if verdict_at(mid) == Verdict.SpreadingCertified:
            bracket.mu_hi = mid
        else:
            bracket.mu_lo = mid

    log.info("Bracket found: %r", bracket)

    return bracket
