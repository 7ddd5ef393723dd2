import copy
import hashlib
import json
import logging
import os

from orangecontrib.freeboundary.core import (
    InitialDataException, InitialSpec, ModelParams, ParamsException, ProblemKind, Preset
)
from orangecontrib.freeboundary.solver import GridException, GridSpec
from orangecontrib.freeboundary.io.schema import BASE_GROUPS, COMMAND_GROUPS, check_group
from orangecontrib.freeboundary.utils import EnumController


log = logging.getLogger(__name__)




class ConfigException(Exception):
    pass




ENV_PREFIX = "FREEBOUNDARY"

# Groups that determine a run's trajectory, hashed into checkpoints.
HASHED_GROUPS = ("problem", "params", "init", "grid")

# Settings that decide each bisection probe's verdict on top of the trajectory.
VERDICT_KEYS = (("grid", "t_max"), ("classify", "tol_vanish"), ("classify", "tol_stall"),
                ("threshold", "max_retries"))




class RunConfig:
    """Grouped run configuration: defaults, then a JSON file, then the environment.

    Every key ``key`` of group ``group`` may be overridden by the variable
    ``FREEBOUNDARY_<GROUP>_<KEY>``; values are read as JSON literals, or as
    plain strings if they do not parse. An unknown key of a known group is
    an error, variables naming no group are ignored.
    """

    DEFAULTS = {
        "problem": {"kind": ProblemKind.NFB},
        "params": {"k": 0.5, "h": 0.5, "r": 1.0, "D": 1.0, "mu": 1.0, "rho": 1.0, "s0": 2.0},
        "init": {"preset": None, "amplitude": 0.5, "table": None},
        "grid": {"n_cells": 400, "dt": 2.5e-4, "t_max": 100.0, "snapshot_stride": 4000},
        "classify": {"tol_vanish": 1e-3, "tol_stall": None},
        "output": {"dir": "out", "plots": False},
        "threshold": {"mu_lo": 1e-3, "mu_hi": 1e2, "rel_tol": 0.05, "max_retries": 3},
        "steady": {"L": 20.0, "m": 2000, "window": [0.0, 5.0], "slack": 0.02, "run": None},
        "ode": {"u0": 0.1, "v0": 0.1, "t_max": 100.0, "dt": 1e-3, "J": 60},
        "barrier": {"delta_min": 1e-3, "delta_max": 0.5, "n_delta": 10,
                    "gamma_min": 1e-3, "gamma_max": 1.0, "n_gamma": 10,
                    "k_min": 1.0, "k_max": 4.0, "n_k": 7,
                    "nt": 400, "nx": 400, "t_check": 50.0},
        "sweep": {"mus": [1e-2, 1e-1, 1.0, 10.0], "s0s": [], "stop_on_certificate": True},
    }


    def __init__(self, groups=None):
        self.groups = copy.deepcopy(RunConfig.DEFAULTS)

        if groups:
            self.update(groups)


    @classmethod
    def load(cls, path=None, environ=None):
        config = cls()

        if path is not None:
            try:
                with open(path, "rt") as f:
                    config.update(json.load(f))
            except OSError as e:
                raise ConfigException(f"Cannot read config '{path}': {e}") from None
            except json.JSONDecodeError as e:
                raise ConfigException(f"Config '{path}' is not valid JSON: {e}") from None

        config.apply_environment(os.environ if environ is None else environ)

        return config


    def _key(self, group, key):
        if group not in self.groups:
            raise ConfigException(f"Unknown config group '{group}'")

        for name in self.groups[group]:
            if name.lower() == key.lower():
                return name

        raise ConfigException(f"Unknown config key '{group}.{key}'")


    def update(self, groups):
        if not isinstance(groups, dict):
            raise ConfigException("Config document must be a JSON object of groups.")

        for group, values in groups.items():
            if not isinstance(values, dict):
                raise ConfigException(f"Config group '{group}' must be an object.")

            for key, value in values.items():
                name = self._key(group, key)
                self.groups[group][name] = value


    def apply_environment(self, environ):
        prefix = ENV_PREFIX + "_"

        for variable, text in environ.items():
            if not variable.startswith(prefix):
                continue

            rest = variable[len(prefix):]

            for group in self.groups:
                if rest.lower().startswith(group + "_"):
                    key = self._key(group, rest[len(group) + 1:])

                    try:
                        value = json.loads(text)
                    except json.JSONDecodeError:
                        value = text

                    log.debug("Environment override %s.%s = %r", group, key, value)
                    self.groups[group][key] = value
                    break

            else:
                log.debug("Ignoring %s, it names no config group", variable)


    def __getitem__(self, group):
        return self.groups[group]


    def set(self, group, key, value):
        name = self._key(group, key)
        self.groups[group][name] = value


    @property
    def kind(self):
        try:
            return EnumController.parse(ProblemKind, self["problem"]["kind"])
        except ValueError as e:
            raise ConfigException(str(e)) from None


    @property
    def params(self):
        try:
            return ModelParams.from_dict(self["params"])
        except ParamsException as e:
            raise ConfigException(str(e)) from None


    @property
    def init_spec(self):
        init = self["init"]
        return InitialSpec(init["preset"], float(init["amplitude"]), init["table"])


    @property
    def grid(self):
        grid = self["grid"]

        try:
            return GridSpec(int(grid["n_cells"]), float(grid["dt"]), float(grid["t_max"]),
                            int(grid["snapshot_stride"]))
        except (TypeError, ValueError) as e:
            raise ConfigException(f"Invalid grid: {e}") from None


    @property
    def output_dir(self):
        return self["output"]["dir"]


    def _check_schema(self, groups):
        errors = [check_group(group, self.groups[group], model) for group, model in groups.items()]
        errors = [error for error in errors if error is not None]

        if errors:
            raise ConfigException("; ".join(errors))


    def validate(self, command=None):
        """Check every precondition of ``command`` before any compute.

        Field types and ranges come from the ``schema`` models; the
        domain objects then check what depends on several groups.

        Raises
        ------
        ConfigException
        """
        self._check_schema(BASE_GROUPS)

        kind = self.kind

        try:
            params = self.params
            params.validate()

            self.grid.validate(params.s0)

            preset = self["init"]["preset"]

            if preset is not None and not EnumController.contains(Preset, preset):
                raise ConfigException(f"Unknown preset '{preset}'")

            self.init_spec.build(kind, params.s0).validate(kind)

        except (ParamsException, GridException, InitialDataException) as e:
            raise ConfigException(str(e)) from None

        if command in COMMAND_GROUPS:
            self._check_schema({command: COMMAND_GROUPS[command]})

        if command == "barrier" and kind != ProblemKind.DFB:
            raise ConfigException("barrier needs problem.kind = DFB")


    def _hash(self, groups):
        text = json.dumps(groups, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()


    def config_hash(self):
        """SHA-256 of the groups that fix a trajectory, t_max excluded."""
        groups = {group: dict(self.groups[group]) for group in HASHED_GROUPS}
        del groups["grid"]["t_max"]

        return self._hash(groups)


    def threshold_hash(self):
        """``config_hash`` extended by the settings behind each probe verdict.

        The bracket and ``rel_tol`` are left out, so a bisection may be
        resumed with a tighter tolerance.
        """
        groups = {group: dict(self.groups[group]) for group in HASHED_GROUPS}

        for group, key in VERDICT_KEYS:
            groups.setdefault(group, {})[key] = self.groups[group][key]

        return self._hash(groups)


    def as_dict(self):
        return copy.deepcopy(self.groups)
