import math

from dataclasses import asdict, dataclass, fields, replace




class ParamsException(Exception):
    pass




class ProblemKind:
    """Left boundary condition of the habitat at x = 0."""
    NFB = "NFB"     # no-flux
    DFB = "DFB"     # homogeneous Dirichlet




class Regime:
    WeakCompetition = "WeakCompetition"
    UWins = "UWins"
    VWins = "VWins"
    Uncovered = "Uncovered"




@dataclass(frozen=True)
class ModelParams:
    """The seven constants of the competition system with a free boundary.

    Attributes
    ----------
    k : float
        Competition coefficient acting on u.
    h : float
        Competition coefficient acting on v.
    r : float
        Growth rate of v.
    D : float
        Diffusivity of v.
    mu : float
        Front-response coefficient of the Stefan condition.
    rho : float
        Weight of the v flux in the Stefan condition.
    s0 : float
        Initial front position.
    """

    k: float
    h: float
    r: float
    D: float
    mu: float
    rho: float
    s0: float

    # Constants that may vanish when the solver runs its reference cases.
    RELAXED = ("k", "h", "mu", "rho")


    def validate(self, strict=True):
        """Check the constants.

        Parameters
        ----------
        strict : bool
            If True every constant must be strictly positive. Otherwise
            k, h, mu and rho may be zero (fixed front, decoupled species).

        Raises
        ------
        ParamsException
            Naming the first offending field.
        """
        for field in fields(self):
            value = getattr(self, field.name)

            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ParamsException(f"'{field.name}' must be a finite number, got {value!r}")

            if strict or field.name not in ModelParams.RELAXED:
                if value <= 0:
                    raise ParamsException(f"'{field.name}' must be positive, got {value}")

            elif value < 0:
                raise ParamsException(f"'{field.name}' must be non-negative, got {value}")


    def with_mu(self, mu):
        return replace(self, mu=float(mu))


    def with_values(self, **changes):
        return replace(self, **changes)


    def as_dict(self):
        return asdict(self)


    @staticmethod
    def from_dict(values):
        try:
            return ModelParams(**{f.name: float(values[f.name]) for f in fields(ModelParams)})
        except KeyError as e:
            raise ParamsException(f"Missing model parameter {e}") from None
        except (TypeError, ValueError) as e:
            raise ParamsException(f"Invalid model parameter: {e}") from None
