# Test methods with long descriptive names can omit docstrings
# pylint: disable=missing-docstring, abstract-method, protected-access
import json
import os
import tempfile
import unittest

from orangecontrib.freeboundary.core import ProblemKind
from orangecontrib.freeboundary.io import ConfigException, RunConfig




class TestRunConfig(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()


    def tearDown(self):
        self.tmp.cleanup()


    def write(self, document, name="config.json"):
        path = os.path.join(self.tmp.name, name)

        with open(path, "wt") as f:
            if isinstance(document, str):
                f.write(document)
            else:
                json.dump(document, f)

        return path


    def test_defaults(self):
        config = RunConfig.load(environ={})

        self.assertEqual(config.kind, ProblemKind.NFB)
        self.assertEqual(config.params.s0, 2.0)
        self.assertEqual(config.grid.n_cells, 400)
        self.assertEqual(config.output_dir, "out")
        config.validate()


    def test_defaults_are_not_shared(self):
        config = RunConfig()
        config.set("sweep", "mus", [1.0])

        self.assertEqual(RunConfig()["sweep"]["mus"], [1e-2, 1e-1, 1.0, 10.0])


    def test_file_then_environment(self):
        path = self.write({"params": {"mu": 3.0, "s0": 1.5}, "problem": {"kind": "dfb"}})
        environ = {"FREEBOUNDARY_PARAMS_MU": "5", "FREEBOUNDARY_OUTPUT_DIR": "results",
                   "HOME": "/root"}

        config = RunConfig.load(path, environ)

        self.assertEqual(config.params.mu, 5.0)
        self.assertEqual(config.params.s0, 1.5)
        self.assertEqual(config.kind, ProblemKind.DFB)
        self.assertEqual(config.output_dir, "results")


    def test_environment_keys_are_case_insensitive(self):
        config = RunConfig.load(environ={"FREEBOUNDARY_PARAMS_d": "2.5",
                                         "FREEBOUNDARY_GRID_N_CELLS": "128"})

        self.assertEqual(config["params"]["D"], 2.5)
        self.assertEqual(config.grid.n_cells, 128)


    def test_environment_lists_parse_as_json(self):
        config = RunConfig.load(environ={"FREEBOUNDARY_SWEEP_MUS": "[0.5, 2]"})

        self.assertEqual(config["sweep"]["mus"], [0.5, 2])


    def test_unknown_keys(self):
        with self.assertRaisesRegex(ConfigException, "params.zeta"):
            RunConfig({"params": {"zeta": 1.0}})

        with self.assertRaisesRegex(ConfigException, "group 'physics'"):
            RunConfig({"physics": {"mu": 1.0}})

        with self.assertRaisesRegex(ConfigException, "params.ZETA"):
            RunConfig.load(environ={"FREEBOUNDARY_PARAMS_ZETA": "1"})

        with self.assertRaisesRegex(ConfigException, "group 'physics'"):
            RunConfig().set("physics", "mu", 1.0)

        # Variables that name no group are not ours.
        RunConfig.load(environ={"FREEBOUNDARY_PHYSICS_MU": "1"})


    def test_unreadable_files(self):
        with self.assertRaisesRegex(ConfigException, "Cannot read"):
            RunConfig.load(os.path.join(self.tmp.name, "missing.json"), {})

        with self.assertRaisesRegex(ConfigException, "not valid JSON"):
            RunConfig.load(self.write("{params"), {})

        with self.assertRaisesRegex(ConfigException, "JSON object"):
            RunConfig.load(self.write("[1, 2]"), {})


    def test_hash_ignores_t_max_and_output(self):
        config = RunConfig()
        reference = config.config_hash()

        config.set("grid", "t_max", 500.0)
        config.set("output", "dir", "elsewhere")
        config.set("threshold", "rel_tol", 0.01)

        self.assertEqual(config.config_hash(), reference)
        self.assertEqual(config["grid"]["t_max"], 500.0)
        self.assertEqual(len(reference), 64)

        config.set("params", "mu", 2.0)
        self.assertNotEqual(config.config_hash(), reference)


    def test_threshold_hash_covers_verdict_settings(self):
        reference = RunConfig()

        for group, key, value in (("grid", "t_max", 1.0), ("classify", "tol_vanish", 0.5),
                                  ("classify", "tol_stall", 1e-2), ("threshold", "max_retries", 0)):
            config = RunConfig()
            config.set(group, key, value)

            self.assertEqual(config.config_hash(), reference.config_hash())
            self.assertNotEqual(config.threshold_hash(), reference.threshold_hash(), msg=key)

        tighter = RunConfig({"threshold": {"rel_tol": 0.01, "mu_hi": 50.0}})
        self.assertEqual(tighter.threshold_hash(), reference.threshold_hash())


    def test_invalid_values(self):
        cases = [
            ("problem", "kind", "XFB", "XFB"),
            ("params", "k", -1.0, "k"),
            ("params", "mu", "fast", "fast"),
            ("grid", "n_cells", 8, "n_cells"),
            ("init", "preset", "Triangle", "Triangle"),
            ("init", "preset", "CosineBump", None),
            ("classify", "tol_vanish", -1e-3, "tol_vanish"),
            ("classify", "tol_stall", "none", "tol_stall"),
        ]

        for group, key, value, message in cases:
            config = RunConfig()
            config.set(group, key, value)

            if group == "init":
                config.set("problem", "kind", ProblemKind.DFB)

            with self.assertRaises(ConfigException) as cm:
                config.validate()

            if message is not None:
                self.assertIn(message, str(cm.exception))


    def test_schema_takes_json_literals_only(self):
        cases = [
            ("params", "s0", "2.0", "params.s0"),
            ("grid", "dt", float("nan"), "grid.dt"),
            ("grid", "n_cells", 64.0, "grid.n_cells"),
            ("output", "plots", "yes", "output.plots"),
            ("problem", "kind", 1, "problem.kind"),
        ]

        for group, key, value, message in cases:
            config = RunConfig()
            config.set(group, key, value)

            with self.assertRaisesRegex(ConfigException, message):
                config.validate()


    def test_schema_reports_every_failed_field(self):
        config = RunConfig({"params": {"k": 0.0, "h": -1.0}})

        with self.assertRaises(ConfigException) as cm:
            config.validate()

        self.assertIn("params.k", str(cm.exception))
        self.assertIn("params.h", str(cm.exception))


    def test_command_groups_checked_only_for_their_command(self):
        config = RunConfig({"sweep": {"mus": []}})

        config.validate("simulate")

        with self.assertRaisesRegex(ConfigException, "sweep"):
            config.validate("sweep")


    def test_small_initial_front(self):
        config = RunConfig({"params": {"s0": 0.01}})

        with self.assertRaisesRegex(ConfigException, "d_xi"):
            config.validate("simulate")


    def test_command_checks(self):
        cases = [
            ("threshold", {"threshold": {"mu_lo": 10.0, "mu_hi": 1.0}}),
            ("threshold", {"threshold": {"rel_tol": 1.5}}),
            ("threshold", {"threshold": {"max_retries": -1}}),
            ("steady", {"steady": {"window": [0.0, 50.0]}}),
            ("steady", {"steady": {"m": 100}}),
            ("steady", {"steady": {"slack": -1}}),
            ("ode", {"ode": {"u0": 0.0}}),
            ("ode", {"ode": {"J": 0}}),
            ("barrier", {"problem": {"kind": "NFB"}}),
            ("barrier", {"problem": {"kind": "DFB"}, "barrier": {"n_gamma": 0}}),
            ("sweep", {"sweep": {"mus": []}}),
            ("sweep", {"sweep": {"s0s": [1.0, -1.0]}}),
        ]

        for command, groups in cases:
            with self.assertRaises(ConfigException, msg=f"{command} {groups}"):
                RunConfig(groups).validate(command)


    def test_command_defaults_validate(self):
        for command in ("simulate", "classify", "threshold", "steady", "ode", "sweep"):
            RunConfig().validate(command)

        RunConfig({"problem": {"kind": "DFB"}}).validate("barrier")




if __name__ == "__main__":
    unittest.main()
