from .params import ModelParams, ParamsException, ProblemKind, Regime
from .initialdata import InitialData, InitialDataException, InitialSpec, Preset
from .limits import (
    RegimeException, a_priori_bound, classify_regime, coexistence_limit, lambda_threshold
)
