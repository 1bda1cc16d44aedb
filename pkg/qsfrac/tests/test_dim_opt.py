from fractions import Fraction
import math
import unittest

from qsfrac import dim_opt
from qsfrac import fractal_dim
from qsfrac.dim_opt import Cubic
from qsfrac.dim_opt import LinearConstraint
from qsfrac.errors import DegenerateLeadingCoefficient
from qsfrac.errors import DomainError
from qsfrac.errors import InfeasibleConstraint
from qsfrac.errors import InvalidInterval
from qsfrac.fractal_dim import FrequencyVector
from qsfrac.monte_carlo import generator
from qsfrac.qs_system import QsSystem

LOG3_2 = math.log(2) / math.log(3)


class CubicTests(unittest.TestCase):

    def test_stationarity_cubic(self):
        roots = dim_opt.solve_cubic_real(dim_opt.M0_STATIONARITY)
        self.assertEqual(len(roots), 1)
        self.assertAlmostEqual(roots[0], 0.1655, delta=5e-4)
        self.assertLessEqual(abs(dim_opt.M0_STATIONARITY(roots[0])), 1e-12)

    def test_radical_form_agrees(self):
        root = dim_opt.solve_cubic_real(dim_opt.M0_STATIONARITY)[0]
        self.assertAlmostEqual(dim_opt.radical_root(dim_opt.M0_STATIONARITY), root, delta=1e-9)
        self.assertAlmostEqual(root, 0.16549, delta=1e-4)

    def test_pure_cube(self):
        self.assertEqual(len(dim_opt.solve_cubic_real(Cubic(1, 0, 0, -8))), 1)
        self.assertAlmostEqual(dim_opt.solve_cubic_real(Cubic(1, 0, 0, -8))[0], 2.0, places=12)

    def test_three_real_roots(self):
        roots = dim_opt.solve_cubic_real(Cubic.parse('1,-6,11,-6'))
        self.assertEqual(len(roots), 3)
        for root, expected in zip(roots, (1.0, 2.0, 3.0)):
            self.assertAlmostEqual(root, expected, places=10)

    def test_double_root_reported_once(self):
        roots = dim_opt.solve_cubic_real(Cubic(1, -4, 5, -2))
        self.assertEqual(len(roots), 2)
        self.assertAlmostEqual(roots[0], 1.0, delta=1e-6)
        self.assertAlmostEqual(roots[1], 2.0, places=9)

    def test_radical_root_needs_one_real_root(self):
        with self.assertRaises(DomainError):
            dim_opt.radical_root(Cubic(1, -6, 11, -6))

    def test_degenerate_leading_coefficient(self):
        with self.assertRaises(DegenerateLeadingCoefficient):
            Cubic(0, 1, 2, 3)


class GoldenSectionTests(unittest.TestCase):

    def test_parabola(self):
        found = dim_opt.maximize_1d(lambda x: -(x - 0.25) ** 2, 0.0, 1.0, 1e-10)
        self.assertAlmostEqual(found.argmax, 0.25, delta=1e-9)

    def test_m0_objective(self):
        found = dim_opt.maximize_1d(dim_opt.m0_objective, 0.0, 1.0 / 3.0)
        self.assertAlmostEqual(found.argmax, 0.1655, delta=5e-4)

    def test_monotone_edge(self):
        found = dim_opt.maximize_1d(lambda x: x, 0.0, 1.0, 1e-10)
        self.assertAlmostEqual(found.argmax, 1.0, delta=1e-9)

    def test_bad_interval(self):
        with self.assertRaises(InvalidInterval):
            dim_opt.maximize_1d(lambda x: x, 1.0, 0.0)
        with self.assertRaises(InvalidInterval):
            dim_opt.maximize_1d(lambda x: x, 0.0, 1.0, 0.0)


class KnownOptimaTests(unittest.TestCase):

    def test_m0_optimum(self):
        found = dim_opt.m0_optimum()
        for value, expected in zip(found.tau, (0.5828, 0.2517, 0.1655)):
            self.assertAlmostEqual(value, expected, delta=5e-4)
        self.assertAlmostEqual(found.dim, 0.8733, delta=5e-4)
        self.assertLessEqual(abs(found.search_argmax - found.stationarity_root), 1e-6)
        self.assertLessEqual(found.constraint_residual, 1e-9)
        self.assertEqual(found.method, dim_opt.CARDANO)

    def test_m0_optimum_satisfies_level_condition(self):
        tau = dim_opt.m0_optimum().tau
        self.assertAlmostEqual(tau[1] + 2 * tau[2], tau[0], delta=1e-9)

    def test_m0_optimum_is_stationary(self):
        x = dim_opt.m0_optimum().stationarity_root
        h = 1e-6
        slope = (dim_opt.m0_objective(x + h) - dim_opt.m0_objective(x - h)) / (2 * h)
        self.assertLessEqual(abs(slope), 1e-4)

    def test_m1_optimum(self):
        found = dim_opt.m1_optimum()
        self.assertEqual(found.tau.tau, (Fraction(1, 2), Fraction(1, 2), Fraction(0)))
        self.assertAlmostEqual(found.dim, LOG3_2, delta=1e-12)
        self.assertIn('log_3 2', found.note)
        self.assertIn('log_2 3', found.note)

    def test_m2_dimension(self):
        self.assertEqual(dim_opt.m2_dimension(), 0)


class ConstrainedTests(unittest.TestCase):

    def setUp(self):
        self.ternary = QsSystem.uniform(3)

    def test_reproduces_m0(self):
        found = dim_opt.maximize_be_constrained(self.ternary, LinearConstraint.parse('0,2,3=1'))
        expected = dim_opt.m0_optimum()
        self.assertAlmostEqual(found.dim, expected.dim, delta=1e-9)
        for value, other in zip(found.tau, expected.tau):
            self.assertAlmostEqual(value, other, delta=1e-5)

    def test_reproduces_m1(self):
        found = dim_opt.maximize_be_constrained(self.ternary, LinearConstraint.parse('0,0,1=0'))
        self.assertAlmostEqual(found.dim, LOG3_2, delta=1e-12)
        self.assertAlmostEqual(found.tau[0], 0.5, delta=1e-6)

    def test_optimum_dominates_feasible_points(self):
        rng = generator(4242)
        for point in rng.dirichlet([1.0, 1.0, 1.0], size=100):
            tau = FrequencyVector(tuple(float(v) for v in point / point.sum()))
            theta = tau[1] + 2 * tau[2]
            constraint = LinearConstraint((0, 1, 2), theta)
            found = dim_opt.maximize_be_constrained(self.ternary, constraint)
            value = fractal_dim.be_dimension(self.ternary, tau).value
            self.assertLessEqual(value, found.dim + 1e-9, msg=str(tau.tau))

    def test_single_feasible_point(self):
        found = dim_opt.maximize_be_constrained(self.ternary, LinearConstraint.parse('1,0,0=1'))
        self.assertEqual(found.tau.tau, (1, 0, 0))
        self.assertEqual(found.dim, 0)

    def test_infeasible(self):
        with self.assertRaises(InfeasibleConstraint):
            dim_opt.maximize_be_constrained(self.ternary, LinearConstraint.parse('0,1,2=5'))

    def test_needs_ternary(self):
        with self.assertRaises(DomainError):
            dim_opt.maximize_be_constrained(QsSystem.uniform(2), LinearConstraint.parse('0,1=0'))

    def test_malformed_constraint(self):
        with self.assertRaises(DomainError):
            LinearConstraint.parse('0,1,2')
        with self.assertRaises(DomainError):
            LinearConstraint.parse('1,1,1=1')

    def test_family(self):
        bounds = dim_opt.m_family()
        self.assertAlmostEqual(bounds[0].dim, 0.8733, delta=5e-4)
        self.assertAlmostEqual(bounds[1].dim, LOG3_2, delta=1e-9)
        self.assertEqual(bounds[2].dim, 0)
        self.assertEqual(bounds['union'], bounds[0].dim)

    def test_mean_constrained_matches_segment_search(self):
        for theta in ('1/2', '4/5', '3/2'):
            segment = dim_opt.maximize_be_constrained(
                self.ternary, LinearConstraint.parse('0,1,2=%s' % theta))
            gibbs = dim_opt.maximize_be_mean_constrained(self.ternary, theta)
            self.assertAlmostEqual(gibbs.dim, segment.dim, delta=1e-8, msg=theta)
            self.assertLessEqual(gibbs.constraint_residual, 1e-9)

    def test_mean_constrained_corners(self):
        self.assertEqual(dim_opt.maximize_be_mean_constrained(self.ternary, 0).dim, 0)
        with self.assertRaises(DomainError):
            dim_opt.maximize_be_mean_constrained(self.ternary, '5/2')


if __name__ == "__main__":
    unittest.main()
