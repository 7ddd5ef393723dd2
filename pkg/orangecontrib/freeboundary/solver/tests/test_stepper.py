# Test methods with long descriptive names can omit docstrings
# pylint: disable=missing-docstring, abstract-method, protected-access
import math
import unittest
import warnings

import numpy as np

from orangecontrib.freeboundary.core import InitialData, ProblemKind
from orangecontrib.freeboundary.solver import (
    BlowUpException, FrontRetreatException, PositivityException, SimState, StabilityException,
    boundary_flux, checked_front_speed, front_speed, stability_limit, transformed_step,
    within_stability_limit
)
from orangecontrib.freeboundary.tests.utils import explicit_fixed_domain_step, make_params




def state_from(U, V=None, s=1.0):
    U = np.asarray(U, dtype=float)
    V = np.zeros_like(U) if V is None else np.asarray(V, dtype=float)
    return SimState(0.0, s, 0.0, U, V)


def preset_state(kind, s0, n_cells):
    params = make_params(s0=s0)
    return SimState.initial(params, kind, InitialData.preset(kind, s0), n_cells)




class TestBoundaryFlux(unittest.TestCase):
    def test_linear_profile_is_exact(self):
        for n in (16, 37, 100):
            xi = np.linspace(0.0, 1.0, n + 1)
            flux_u, flux_v = boundary_flux(state_from(1.0 - xi, 2.0 * (1.0 - xi), s=2.0))

            self.assertAlmostEqual(flux_u, -0.5, places=12)
            self.assertAlmostEqual(flux_v, -1.0, places=12)


    def test_zero_profile(self):
        self.assertEqual(boundary_flux(state_from(np.zeros(17))), (0.0, 0.0))


    def test_quarter_sine(self):
        xi = np.linspace(0.0, 1.0, 257)
        flux_u, _ = boundary_flux(state_from(np.sin(np.pi * (1.0 - xi) / 2.0)))

        self.assertLess(abs(flux_u + np.pi / 2.0), 1e-3)


    def test_non_positive_for_profiles_vanishing_at_front(self):
        rng = np.random.default_rng(0)

        for _ in range(20):
            xi = np.linspace(0.0, 1.0, 33)
            # Concave near the front.
            U = rng.uniform(0.1, 2.0) * np.sin(np.pi * (1.0 - xi) / 2.0)
            flux_u, _ = boundary_flux(state_from(U, s=rng.uniform(0.5, 5.0)))

            self.assertLessEqual(flux_u, 0.0)


    def test_needs_three_cells(self):
        with self.assertRaises(ValueError):
            boundary_flux(state_from([0.5, 0.2, 0.0]))




class TestFrontSpeed(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(front_speed(-1.0, -1.0, make_params(mu=1.0, rho=1.0)), 2.0)
        self.assertEqual(front_speed(0.0, 0.0, make_params()), 0.0)
        self.assertEqual(front_speed(-0.5, -0.25, make_params(mu=2.0, rho=4.0)), 3.0)


    def test_roundoff_retreat_flushed(self):
        xi = np.linspace(0.0, 1.0, 17)
        U = np.zeros_like(xi)
        U[-3] = 1e-16

        self.assertEqual(checked_front_speed(state_from(U), make_params()), 0.0)


    def test_retreat_raises(self):
        xi = np.linspace(0.0, 1.0, 17)
        U = np.zeros_like(xi)
        U[-3] = 0.5

        with self.assertRaisesRegex(FrontRetreatException, "retreat"):
            checked_front_speed(state_from(U), make_params())


    def test_non_finite_speed(self):
        U = np.zeros(17)
        U[-2] = np.nan

        with self.assertRaises(BlowUpException):
            checked_front_speed(state_from(U), make_params())


    def test_stability_limit(self):
        state = preset_state(ProblemKind.NFB, 2.0, 64)
        s_prime = checked_front_speed(state, make_params())

        self.assertAlmostEqual(stability_limit(state, make_params()), 0.5 * 2.0 / (64 * s_prime))
        self.assertEqual(stability_limit(state_from(np.zeros(17)), make_params()), math.inf)


    def test_denormal_front_speed_needs_no_division(self):
        params = make_params(mu=1e-320)
        state = preset_state(ProblemKind.NFB, 2.0, 64)

        with warnings.catch_warnings():
            warnings.simplefilter("error")

            s_prime = checked_front_speed(state, params)
            self.assertGreater(s_prime, 0.0)
            self.assertLess(s_prime, 1e-300)

            self.assertEqual(stability_limit(state, params), math.inf)
            self.assertTrue(within_stability_limit(state, params, 1e-3))

            new = transformed_step(state, params, ProblemKind.NFB, 1e-3)

        self.assertGreaterEqual(new.s, 2.0)


    def test_within_stability_limit_matches_limit(self):
        params = make_params(mu=100.0)
        state = preset_state(ProblemKind.NFB, 2.0, 64)
        limit = stability_limit(state, params)

        self.assertTrue(within_stability_limit(state, params, 0.99 * limit))
        self.assertFalse(within_stability_limit(state, params, 1.01 * limit))




class TestTransformedStep(unittest.TestCase):
    def test_zero_state_is_equilibrium(self):
        for kind in (ProblemKind.NFB, ProblemKind.DFB):
            state = state_from(np.zeros(33), np.zeros(33), s=1.5)
            new = transformed_step(state, make_params(), kind, 1e-3)

            self.assertEqual(new.s, 1.5)
            self.assertEqual(new.s_prime, 0.0)
            np.testing.assert_array_equal(new.U, 0.0)
            np.testing.assert_array_equal(new.V, 0.0)


    def test_zero_mu_keeps_front(self):
        params = make_params(mu=0.0, s0=1.0)
        state = preset_state(ProblemKind.NFB, 1.0, 64)

        for _ in range(10):
            state = transformed_step(state, params, ProblemKind.NFB, 1e-3)

        self.assertEqual(state.s, 1.0)
        self.assertEqual(state.step, 10)


    def test_matches_explicit_fixed_domain_scheme(self):
        params = make_params(mu=0.0, k=0.0, h=0.0, D=1.0, r=1.0, s0=1.0)
        state = preset_state(ProblemKind.NFB, 1.0, 50)

        new = transformed_step(state, params, ProblemKind.NFB, 1e-4)
        U, V = explicit_fixed_domain_step(state.U, state.V, 1.0, params, ProblemKind.NFB, 1e-4)

        np.testing.assert_allclose(new.U, U, atol=1e-6, rtol=0)
        np.testing.assert_allclose(new.V, V, atol=1e-6, rtol=0)


    def test_matches_explicit_scheme_dirichlet(self):
        params = make_params(mu=0.0, s0=1.0)
        state = preset_state(ProblemKind.DFB, 1.0, 50)

        new = transformed_step(state, params, ProblemKind.DFB, 1e-4)
        U, V = explicit_fixed_domain_step(state.U, state.V, 1.0, params, ProblemKind.DFB, 1e-4)

        np.testing.assert_allclose(new.U, U, atol=1e-6, rtol=0)
        np.testing.assert_allclose(new.V, V, atol=1e-6, rtol=0)


    def test_boundary_rows(self):
        state = preset_state(ProblemKind.DFB, 2.0, 64)
        new = transformed_step(state, make_params(), ProblemKind.DFB, 1e-3)

        self.assertEqual(new.U[0], 0.0)
        self.assertEqual(new.V[0], 0.0)
        self.assertEqual(new.U[-1], 0.0)
        self.assertEqual(new.V[-1], 0.0)


    def test_front_advances_by_euler_step(self):
        params = make_params()
        state = preset_state(ProblemKind.NFB, 2.0, 64)
        s_prime = checked_front_speed(state, params)

        new = transformed_step(state, params, ProblemKind.NFB, 1e-3)

        self.assertEqual(new.s, 2.0 + 1e-3 * s_prime)
        self.assertGreaterEqual(new.s_prime, 0.0)


    def test_dt_above_stability_limit(self):
        params = make_params(mu=100.0)
        state = preset_state(ProblemKind.NFB, 2.0, 64)

        with self.assertRaises(StabilityException):
            transformed_step(state, params, ProblemKind.NFB, 2.0 * stability_limit(state, params))


    def test_blow_up_reported_with_step(self):
        state = preset_state(ProblemKind.NFB, 2.0, 64)
        state.U[5] = np.inf
        state.step = 7

        with self.assertRaisesRegex(BlowUpException, "step 8") as cm:
            transformed_step(state, make_params(mu=0.0), ProblemKind.NFB, 1e-3)

        self.assertEqual(cm.exception.step, 8)


    def test_large_undershoot_is_positivity_violation(self):
        state = preset_state(ProblemKind.NFB, 2.0, 64)
        state.V[10] = -1.0

        with self.assertRaisesRegex(PositivityException, "positivity violation"):
            transformed_step(state, make_params(mu=0.0), ProblemKind.NFB, 1e-3)




if __name__ == "__main__":
    unittest.main()
