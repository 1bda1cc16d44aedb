from fractions import Fraction
from itertools import combinations
from itertools import permutations
import math
import unittest

from qsfrac import fractal_dim
from qsfrac.errors import DigitOutOfRange
from qsfrac.errors import DomainError
from qsfrac.errors import EmptySubset
from qsfrac.errors import NonPositiveK
from qsfrac.errors import SimplexViolation
from qsfrac.fractal_dim import FrequencyVector
from qsfrac.monte_carlo import generator
from qsfrac.qs_system import QsSystem
from qsfrac.qs_system import new_system

LOG3_2 = math.log(2) / math.log(3)


class FrequencyVectorTests(unittest.TestCase):

    def test_simplex(self):
        with self.assertRaises(SimplexViolation):
            FrequencyVector((0.5, 0.6, -0.1))
        with self.assertRaises(SimplexViolation):
            FrequencyVector(('1/2', '1/3'))
        self.assertEqual(FrequencyVector.uniform(4).tau, (Fraction(1, 4),) * 4)


class BesicovitchEgglestonTests(unittest.TestCase):

    def setUp(self):
        self.ternary = QsSystem.uniform(3)

    def test_uniform_frequencies_fill_the_interval(self):
        result = fractal_dim.be_dimension(self.ternary, FrequencyVector.uniform(3))
        self.assertEqual(result.value, 1)
        floats = new_system((1 / 3, 1 / 3, 1 / 3))
        value = fractal_dim.be_dimension(floats, FrequencyVector((1 / 3, 1 / 3, 1 / 3))).value
        self.assertAlmostEqual(value, 1.0, delta=1e-12)

    def test_point_mass_is_zero(self):
        result = fractal_dim.be_dimension(self.ternary, FrequencyVector((1, 0, 0)))
        self.assertEqual(result.value, 0)
        self.assertIsInstance(result.value, Fraction)

    def test_float_point_mass_is_positive_zero(self):
        value = fractal_dim.be_dimension(self.ternary, FrequencyVector((1.0, 0.0, 0.0))).value
        self.assertEqual(value, 0.0)
        self.assertEqual(math.copysign(1.0, value), 1.0)

    def test_symmetric_under_joint_permutation(self):
        rng = generator(17)
        q = (0.2, 0.3, 0.5)
        for point in rng.dirichlet([1.0, 1.0, 1.0], size=50):
            tau = tuple(float(v) for v in point / point.sum())
            reference = fractal_dim.be_dimension(new_system(q), FrequencyVector(tau)).value
            for order in permutations(range(3)):
                system = new_system(tuple(q[i] for i in order))
                permuted = FrequencyVector(tuple(tau[i] for i in order))
                self.assertAlmostEqual(fractal_dim.be_dimension(system, permuted).value,
                                       reference, delta=1e-12, msg=str(order))

    def test_m0_frequencies(self):
        tau = FrequencyVector((0.5828, 0.2517, 0.1655))
        self.assertAlmostEqual(fractal_dim.be_dimension(self.ternary, tau).value, 0.8733,
                               delta=5e-4)

    def test_skewed_weights(self):
        system = new_system('1/5,3/10,1/2')
        self.assertEqual(fractal_dim.be_dimension(system, FrequencyVector(system.q)).value, 1)

    def test_at_most_one_on_random_points(self):
        rng = generator(99)
        systems = [self.ternary, new_system((0.2, 0.3, 0.5))]
        for point in rng.dirichlet([0.5, 0.5, 0.5], size=1000):
            tau = FrequencyVector(tuple(float(v) for v in point / point.sum()))
            for system in systems:
                value = fractal_dim.be_dimension(system, tau).value
                self.assertLessEqual(value, 1.0, msg=str(tau.tau))
                self.assertGreaterEqual(value, 0.0)

    def test_size_mismatch(self):
        with self.assertRaises(SimplexViolation):
            fractal_dim.be_dimension(self.ternary, FrequencyVector((0.5, 0.5)))

    def test_dimension_outside_unit_interval(self):
        with self.assertRaises(DomainError):
            fractal_dim.DimensionResult(1.5, fractal_dim.BE_FORMULA)
        self.assertEqual(fractal_dim.DimensionResult(1 + 1e-12, fractal_dim.BE_FORMULA).value,
                         1.0)


class MoranTests(unittest.TestCase):

    def setUp(self):
        self.ternary = QsSystem.uniform(3)

    def test_middle_third_cantor_set(self):
        result = fractal_dim.moran_dimension(self.ternary, {0, 2})
        self.assertAlmostEqual(result.value, LOG3_2, delta=1e-12)
        self.assertLessEqual(result.residual, 1e-13)
        self.assertEqual(result.method, fractal_dim.MORAN_BISECTION)

    def test_full_alphabet(self):
        result = fractal_dim.moran_dimension(new_system((0.2, 0.3, 0.5)), {0, 1, 2})
        self.assertEqual(result.value, 1)
        self.assertEqual(result.residual, 0)

    def test_single_digit(self):
        result = fractal_dim.moran_dimension(new_system((0.2, 0.3, 0.5)), [1])
        self.assertEqual(result.value, 0)

    def test_skewed_root(self):
        system = new_system((0.2, 0.3, 0.5))
        result = fractal_dim.moran_dimension(system, [0, 2])
        self.assertAlmostEqual(0.2 ** result.value + 0.5 ** result.value, 1.0, delta=1e-13)

    def test_larger_subsets_never_lose_dimension(self):
        for system in (QsSystem.uniform(4), new_system((0.1, 0.2, 0.3, 0.4))):
            subsets = [frozenset(c) for size in range(1, 5)
                       for c in combinations(range(4), size)]
            dims = {v: fractal_dim.moran_dimension(system, v).value for v in subsets}
            for small in subsets:
                for large in subsets:
                    if small <= large:
                        self.assertLessEqual(dims[small], dims[large] + 1e-12,
                                             msg='%s %s' % (sorted(small), sorted(large)))

    def test_bad_subsets(self):
        with self.assertRaises(EmptySubset):
            fractal_dim.moran_dimension(self.ternary, [])
        with self.assertRaises(DigitOutOfRange):
            fractal_dim.moran_dimension(self.ternary, [0, 3])


class ClosedFormTests(unittest.TestCase):

    def test_ak_dimension(self):
        self.assertEqual(fractal_dim.ak_dimension(1), Fraction(1, 2))
        self.assertEqual(fractal_dim.ak_dimension(9), Fraction(9, 10))
        values = [fractal_dim.ak_dimension(k) for k in (1, 10, 1000, 10 ** 6)]
        self.assertEqual(values, sorted(values))
        self.assertLess(1 - values[-1], 1e-5)

    def test_ak_needs_positive_k(self):
        for k in (0, -3, 2.5):
            with self.assertRaises(NonPositiveK):
                fractal_dim.ak_dimension(k)

    def test_level_set_bounds(self):
        ternary = QsSystem.uniform(3)
        self.assertAlmostEqual(fractal_dim.level_set_lower_bound(ternary, 1).value, 1.0,
                               delta=1e-9)
        self.assertEqual(fractal_dim.level_set_lower_bound(ternary, 0).value, 0)
        self.assertEqual(fractal_dim.level_set_lower_bound(ternary, 2).value, 0)

    def test_level_set_general_system(self):
        system = new_system((0.2, 0.3, 0.5))
        value = fractal_dim.level_set_lower_bound(system, '1.3').value
        self.assertAlmostEqual(value, 1.0, delta=1e-6)
        quaternary = QsSystem.uniform(4)
        self.assertAlmostEqual(fractal_dim.level_set_lower_bound(quaternary, '3/2').value, 1.0,
                               delta=1e-6)
        self.assertLess(fractal_dim.level_set_lower_bound(quaternary, '1/2').value, 1.0)

    def test_level_set_out_of_range(self):
        with self.assertRaises(DomainError):
            fractal_dim.level_set_lower_bound(QsSystem.uniform(3), 3)


if __name__ == "__main__":
    unittest.main()
