import numpy as np

from dataclasses import asdict, dataclass




class ClassifyException(Exception):
    pass




class Verdict:
    SpreadingCertified = "SpreadingCertified"
    VanishingHeuristic = "VanishingHeuristic"
    Undetermined = "Undetermined"




# Populations below this level count as extinct.
DEFAULT_TOL_VANISH = 1e-3

# Front growth over the final part of a run, relative to the threshold length.
DEFAULT_STALL_FACTOR = 1e-4

# Share of the run inspected for a stalled front.
STALL_WINDOW = 0.2




@dataclass(frozen=True)
class Classification:
    """Dichotomy verdict with the evidence it rests on.

    ``certificate_time`` is the first recorded time with s(t) > lam for a
    spreading certificate, the final time for a vanishing verdict and None
    otherwise.
    """

    verdict: str
    certificate_time: float
    final_s: float
    final_sup_u: float
    final_sup_v: float
    final_s_prime: float
    lam: float


    def as_dict(self):
        return asdict(self)


    @staticmethod
    def from_dict(values):
        return Classification(**values)




def _stalled(t, s, tol_stall):
    t_end = t[-1]

    if t_end <= 0:
        return False

    start = np.searchsorted(t, (1.0 - STALL_WINDOW) * t_end)

    return s[-1] - s[start] < tol_stall


def classify_run(record, lam, tol_vanish=DEFAULT_TOL_VANISH, tol_stall=None):
    """Spreading or vanishing verdict for a recorded run.

    Parameters
    ----------
    record : RunRecord
        A complete run, or the prefix of a run that failed late.
    lam : float
        Threshold length of the record's problem kind.
    tol_vanish : float
        Level below which sup U and sup V count as extinct.
    tol_stall : float, optional
        Largest front growth over the final fifth of the run that counts
        as a stalled front, ``1e-4 * lam`` by default.

    Returns
    -------
    Classification
    """
    if not lam > 0:
        raise ClassifyException(f"Threshold length must be positive, got {lam}")

    if tol_stall is None:
        tol_stall = DEFAULT_STALL_FACTOR * lam

    if tol_vanish < 0 or tol_stall < 0:
        raise ClassifyException("Classification tolerances must be non-negative.")

    if len(record) == 0:
        raise ClassifyException("Cannot classify an empty record.")

    t = record.column("t")
    s = record.column("s")
    final = record.final

    evidence = dict(final_s=final["s"], final_sup_u=final["sup_u"], final_sup_v=final["sup_v"],
                    final_s_prime=final["s_prime"], lam=lam)

    # A front that starts at the threshold can never come to rest below it.
    if s[0] >= lam:
        return Classification(Verdict.SpreadingCertified, float(t[0]), **evidence)

    above = np.flatnonzero(s > lam)

    if len(above):
        return Classification(Verdict.SpreadingCertified, float(t[above[0]]), **evidence)

    if (s[-1] < lam and final["sup_u"] < tol_vanish and final["sup_v"] < tol_vanish
            and _stalled(t, s, tol_stall)):
        return Classification(Verdict.VanishingHeuristic, float(t[-1]), **evidence)

    return Classification(Verdict.Undetermined, None, **evidence)
