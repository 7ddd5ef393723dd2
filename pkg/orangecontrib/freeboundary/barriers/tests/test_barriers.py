# Test methods with long descriptive names can omit docstrings
# pylint: disable=missing-docstring, abstract-method, protected-access
import math
import unittest

import numpy as np

from orangecontrib.freeboundary.barriers import (
    NoWitnessException, SearchSpec, SupersolutionException, SupersolutionParams, certificate,
    eval_barrier, front_mu_limit, search_mu0, verify_supersolution, worst_margins
)
from orangecontrib.freeboundary.classify import Verdict, classify_run
from orangecontrib.freeboundary.core import InitialData, ProblemKind, lambda_threshold
from orangecontrib.freeboundary.solver import GridSpec, simulate
from orangecontrib.freeboundary.tests.utils import make_params, slow




SMALL_SPEC = SearchSpec(deltas=(0.05, 0.1), gammas=(0.01, 0.1), k_factors=(1.5, 3.0),
                        nt=50, nx=50)


def candidate(delta=0.1, gamma=0.01, K=None, **changes):
    params = make_params(s0=2.0, **changes)
    init = InitialData.preset(ProblemKind.DFB, params.s0)

    if K is None:
        K = 2.0 * max(init.sup_u, init.sup_v)

    return SupersolutionParams(delta, gamma, K, params, init)


def front_limit_at_zero(p):
    return p.s0 * p.delta * p.gamma * p.sigma(0.0) / (2.0 * (1.0 + p.params.rho) * p.K * math.pi)




class TestEvalBarrier(unittest.TestCase):
    def test_front_curve(self):
        p = candidate()

        self.assertAlmostEqual(eval_barrier(p, 0.0, 0.0)[0], 2.0 * 1.05)
        self.assertAlmostEqual(eval_barrier(p, 1e4, 0.0)[0], p.front_bound)
        self.assertAlmostEqual(p.front_bound, 2.2)


    def test_vanishes_at_both_ends(self):
        p = candidate()

        for t in (0.0, 1.0, 30.0):
            sigma, w0 = eval_barrier(p, t, 0.0)
            _, w1 = eval_barrier(p, t, sigma)

            self.assertEqual(w0, 0.0)
            self.assertAlmostEqual(w1, 0.0, places=12)


    def test_arrays_broadcast(self):
        p = candidate()
        xs = np.linspace(0.0, 2.0, 5)

        sigma, w = eval_barrier(p, 0.0, xs)

        self.assertEqual(w.shape, (5,))
        self.assertTrue(np.all(sigma == p.sigma(0.0)))
        self.assertAlmostEqual(w[2], p.K * math.sin(math.pi / 2.1))


    def test_outside_front_raises(self):
        p = candidate()

        with self.assertRaises(SupersolutionException):
            eval_barrier(p, 0.0, 2.5)

        with self.assertRaises(SupersolutionException):
            eval_barrier(p, 0.0, -0.1)




class TestVerifySupersolution(unittest.TestCase):
    def test_valid_candidate_passes(self):
        p = candidate()
        report = verify_supersolution(p, 1e-4)

        self.assertTrue(report["passed"], report["worst_margins"])
        self.assertTrue(report["below_threshold"])
        self.assertAlmostEqual(report["lambda"], math.pi)
        self.assertEqual(report["grid"], {"nt": 400, "nx": 400, "t_check": 50.0})
        self.assertIn("not interval arithmetic", report["label"])


    def test_zero_amplitude_fails_initial_domination(self):
        report = verify_supersolution(candidate(K=0.0), 1e-4)

        self.assertFalse(report["passed"])
        self.assertLess(report["worst_margins"]["initial"], 0.0)


    def test_large_mu_fails_front(self):
        report = verify_supersolution(candidate(), 1e3)

        self.assertFalse(report["passed"])
        self.assertLess(report["worst_margins"]["front"], 0.0)
        self.assertGreaterEqual(report["worst_margins"]["pde_u"], 0.0)


    def test_front_limit_is_sharp(self):
        p = candidate()
        limit = front_mu_limit(p, np.linspace(0.0, 50.0, 400))

        self.assertAlmostEqual(limit, front_limit_at_zero(p), places=12)
        self.assertGreaterEqual(worst_margins(p, 0.99 * limit)["front"], 0.0)
        self.assertLess(worst_margins(p, 1.01 * limit)["front"], 0.0)


    def test_zero_amplitude_has_no_front_limit(self):
        self.assertEqual(front_mu_limit(candidate(K=0.0), [0.0, 1.0]), math.inf)


    def test_replaced_params_are_checked(self):
        p = candidate()
        report = verify_supersolution(p, 1e-4, params=make_params(s0=2.0, r=50.0))

        self.assertFalse(report["passed"])
        self.assertLess(report["worst_margins"]["pde_v"], 0.0)




class TestSearchMu0(unittest.TestCase):
    def test_small_lattice_finds_witness(self):
        params = make_params(s0=2.0)

        mu0, witness = search_mu0(params, spec=SMALL_SPEC)

        self.assertGreater(mu0, 0.0)
        self.assertLess(witness.front_bound, lambda_threshold(params, ProblemKind.DFB))
        self.assertIn(witness.delta, SMALL_SPEC.deltas)
        self.assertIn(witness.gamma, SMALL_SPEC.gammas)

        cert = certificate(witness, mu0, SMALL_SPEC)

        self.assertTrue(cert["passed"])
        self.assertTrue(cert["refined"]["passed"])
        self.assertEqual(cert["mu0"], mu0)
        self.assertEqual(cert["grid"], {"nt": 50, "nx": 50})


    def test_witness_is_the_best_candidate(self):
        mu0, witness = search_mu0(make_params(s0=2.0), spec=SMALL_SPEC)

        self.assertLessEqual(mu0, front_mu_limit(witness, np.linspace(0.0, 50.0, 100)))
        self.assertFalse(verify_supersolution(witness, 2.0 * mu0, nt=50, nx=50)["passed"])


    def test_no_witness_beyond_threshold(self):
        with self.assertRaisesRegex(NoWitnessException, "no witness can exist"):
            search_mu0(make_params(s0=3.5), spec=SMALL_SPEC)


    def test_empty_lattice(self):
        spec = SearchSpec(deltas=(0.9,), gammas=(0.1,), k_factors=(2.0,), nt=20, nx=20)

        # s0 (1 + delta) = 3.8 is beyond the threshold length.
        with self.assertRaisesRegex(NoWitnessException, "no witness found"):
            search_mu0(make_params(s0=2.0), spec=spec)


    def test_only_dirichlet_problems(self):
        with self.assertRaises(SupersolutionException):
            search_mu0(make_params(s0=1.0), kind=ProblemKind.NFB, spec=SMALL_SPEC)


    @slow
    def test_default_lattice_certificate_vanishes(self):
        params = make_params(s0=2.0)
        mu0, _ = search_mu0(params)

        run_params = params.with_mu(mu0 / 2.0)
        record = simulate(run_params, ProblemKind.DFB,
                          InitialData.preset(ProblemKind.DFB, params.s0), GridSpec(200, 1e-3, 100.0, 1000))

        verdict = classify_run(record, lambda_threshold(params, ProblemKind.DFB))

        self.assertEqual(verdict.verdict, Verdict.VanishingHeuristic)
        self.assertLess(record.state.s, 2.0 * 1.5)




if __name__ == "__main__":
    unittest.main()
