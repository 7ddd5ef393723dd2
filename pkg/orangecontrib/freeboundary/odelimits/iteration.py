import numpy as np




class IterationException(Exception):
    pass




CLOSED_FORM_TOL = 1e-12




class IterationSeq:
    """Bounds u_bar_j, v_low_j of the exclusion argument.

    Attributes
    ----------
    u_bar, v_low : numpy.ndarray
        Entries j = 1..J (index 0 holds j = 1).
    sigma : float
        The product h k.
    branch : str
        ``"exclusion"`` if the iteration stopped because k v_low_j >= 1,
        ``"geometric"`` if all requested terms were produced.
    stop_index : int
        The last j produced.
    limit : float or None
        (1 - h) / (1 - hk) when sigma < 1.
    """

    COLUMNS = ("j", "u_bar_j", "v_low_j")


    def __init__(self, h, k, u_bar, v_low, branch, stop_index):
        self.h = h
        self.k = k
        self.u_bar = np.asarray(u_bar, dtype=float)
        self.v_low = np.asarray(v_low, dtype=float)
        self.branch = branch
        self.stop_index = stop_index


    @property
    def sigma(self):
        return self.h * self.k


    @property
    def limit(self):
        if self.sigma < 1:
            return (1.0 - self.h) / (1.0 - self.sigma)

        return None


    def __len__(self):
        return len(self.v_low)


    def as_array(self):
        return np.column_stack((np.arange(1, len(self) + 1), self.u_bar, self.v_low))


    def summary(self):
        return {
            "h": self.h,
            "k": self.k,
            "sigma": self.sigma,
            "branch": self.branch,
            "stop_index": self.stop_index,
            "limit": self.limit,
            "terms": len(self),
        }




def closed_form(h, k, j):
    """(1 - h)(1 + sigma + ... + sigma^(j-1))."""
    return (1.0 - h) * float(np.sum((h * k) ** np.arange(j)))


def iterate_bounds(h, k, J):
    """Iterate u_bar_{j+1} = 1 - k v_low_j, v_low_{j+1} = 1 - h u_bar_{j+1}.

    Starts from u_bar_1 = 1, v_low_1 = 1 - h and stops after J terms or at
    the first j with k v_low_j >= 1. Every term is checked against its
    closed form.

    Raises
    ------
    IterationException
        Outside 0 < h < 1 <= k, or if a term misses its closed form.
    """
    if not (0 < h < 1 <= k):
        raise IterationException(f"Iteration needs 0 < h < 1 <= k, got h={h}, k={k}")

    if int(J) != J or J < 1:
        raise IterationException(f"J must be a positive integer, got {J}")

    u_bar = [1.0]
    v_low = [1.0 - h]

    branch, stop_index = "geometric", J

    for j in range(1, J + 1):
        if j > 1:
            u_bar.append(1.0 - k * v_low[-1])
            v_low.append(1.0 - h * u_bar[-1])

        error = abs(v_low[-1] - closed_form(h, k, j))

        if error > CLOSED_FORM_TOL:
            raise IterationException(f"v_low_{j} misses its closed form by {error:.3e}")

        if k * v_low[-1] >= 1:
            branch, stop_index = "exclusion", j
            break

    return IterationSeq(h, k, u_bar, v_low, branch, stop_index)
