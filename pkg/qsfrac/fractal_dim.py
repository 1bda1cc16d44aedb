"""
    Fractal dimensions
    ~~~~~~~~~~~~~~~~~~

    Hausdorff-Besicovitch dimension of Besicovitch-Eggleston sets E[tau]
    (numbers whose digit frequencies are tau) and of digit-restricted Cantor
    sets C[Q_s, V] (numbers using only the digits in V).
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
import math

from scipy.special import xlogy

from qsfrac import settings
from qsfrac.errors import DegenerateDenominator
from qsfrac.errors import DigitOutOfRange
from qsfrac.errors import DomainError
from qsfrac.errors import EmptySubset
from qsfrac.errors import NonPositiveK
from qsfrac.errors import SimplexViolation
from qsfrac.qs_system import EXACT
from qsfrac.qs_system import FLOAT
from qsfrac.qs_system import FLOAT_TOLERANCE
from qsfrac.qs_system import backend_of
from qsfrac.qs_system import parse_numbers
from qsfrac.qs_system import to_backend

logger = logging.getLogger(__name__)

BE_FORMULA = 'be_formula'
MORAN_BISECTION = 'moran_bisection'
CLOSED_FORM = 'closed_form'

_CLAMP = 1e-9


@dataclass(frozen=True)
class FrequencyVector:
    """A point tau of the probability simplex, one entry per digit."""
    tau: tuple

    def __post_init__(self):
        values = parse_numbers(self.tau)
        backend = backend_of(values)
        values = tuple(to_backend(v, backend) for v in values)
        if len(values) < 2:
            raise SimplexViolation('a frequency vector needs at least two entries')
        for i, v in enumerate(values):
            if v < 0:
                raise SimplexViolation('tau_%d = %s is negative' % (i, v))
        total = sum(values)
        if backend == EXACT and total != 1:
            raise SimplexViolation('frequencies sum to %s, not 1' % total)
        if backend == FLOAT and abs(total - 1.0) > FLOAT_TOLERANCE:
            raise SimplexViolation('frequencies sum to %r, not 1' % total)
        object.__setattr__(self, 'tau', values)

    @classmethod
    def uniform(cls, s):
        return cls(tuple(Fraction(1, s) for _ in range(s)))

    @property
    def s(self):
        return len(self.tau)

    @property
    def backend(self):
        return backend_of(self.tau)

    def __iter__(self):
        return iter(self.tau)

    def __getitem__(self, index):
        return self.tau[index]


@dataclass(frozen=True)
class DimensionResult:
    value: object
    method: str
    residual: float = None
    backend: str = FLOAT
    tolerance: float = None

    def __post_init__(self):
        value = self.value
        if not -_CLAMP <= value <= 1 + _CLAMP:
            raise DomainError('dimension %r is outside [0, 1]' % float(value))
        if value < 0 or value > 1:
            object.__setattr__(self, 'value', min(max(value, 0.0), 1.0))
        if (self.residual is not None and self.tolerance is not None
                and self.residual > self.tolerance):
            raise DomainError('residual %.3g exceeds tolerance %.3g'
                              % (self.residual, self.tolerance))

    def __float__(self):
        return float(self.value)


def _entropy_terms(tau, q):
    return float(sum(xlogy(float(t), float(t)) for t in tau)), \
        float(sum(xlogy(float(t), float(w)) for t, w in zip(tau, q)))


def be_dimension(system, tau):
    """
        Dimension of the Besicovitch-Eggleston set E[tau]:

            sum tau_i ln tau_i / sum tau_i ln q_i

        with 0 ln 0 = 0.

        :param QsSystem system: the numeral system
        :param FrequencyVector tau: the prescribed digit frequencies

        :rtype: DimensionResult
    """
    if tau.s != system.s:
        raise SimplexViolation('tau has %d entries, the system has %d digits'
                               % (tau.s, system.s))
    backend = backend_of(system.q, tau.tau)
    if backend == EXACT:
        if sorted(tau.tau)[-1] == 1:
            return DimensionResult(Fraction(0), BE_FORMULA, 0.0, EXACT)
        if tuple(tau.tau) == tuple(system.q):
            return DimensionResult(Fraction(1), BE_FORMULA, 0.0, EXACT)
    numerator, denominator = _entropy_terms(tau.tau, system.q)
    if denominator == 0.0:
        raise DegenerateDenominator('sum tau_i ln q_i vanishes')
    return DimensionResult(numerator / denominator + 0.0, BE_FORMULA, None, FLOAT)


def _check_subset(system, subset):
    subset = frozenset(int(d) for d in subset)
    if not subset:
        raise EmptySubset('the digit subset V is empty')
    for digit in subset:
        if not 0 <= digit < system.s:
            raise DigitOutOfRange('digit %d is outside {0..%d}' % (digit, system.s - 1))
    return subset


def moran_dimension(system, subset, tolerance=None):
    """
        Dimension of C[Q_s, V], the root alpha in [0, 1] of

            sum over i in V of q_i ** alpha = 1.

        The left side falls strictly with alpha, so bisection on [0, 1]
        always finds the root.

        :param QsSystem system: the numeral system
        :param subset: the allowed digits V

        :rtype: DimensionResult
    """
    if tolerance is None:
        tolerance = settings.MORAN_TOLERANCE
    subset = _check_subset(system, subset)
    if len(subset) == system.s:
        return DimensionResult(Fraction(1), CLOSED_FORM, 0.0, EXACT, tolerance)
    if len(subset) == 1:
        return DimensionResult(Fraction(0), CLOSED_FORM, 0.0, EXACT, tolerance)
    weights = [float(system.q[i]) for i in sorted(subset)]

    def excess(alpha):
        return math.fsum(w ** alpha for w in weights) - 1.0

    lo, hi = 0.0, 1.0
    iterations = 0
    while True:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        iterations += 1
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    alpha = min((lo, hi), key=lambda a: abs(excess(a)))
    residual = abs(excess(alpha))
    logger.debug('moran bisection: %d steps, alpha=%r, residual=%.3g',
                 iterations, alpha, residual)
    return DimensionResult(alpha, MORAN_BISECTION, residual, FLOAT, tolerance)


def ak_dimension(k):
    """Dimension k/(k+1) of the set A_k."""
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise NonPositiveK('k must be a positive integer, got %r' % (k,))
    return Fraction(int(k), int(k) + 1)


def level_set_lower_bound(system, theta, tol=None):
    """
        Lower bound for the dimension of S_theta = {x: r(x) = theta}.

        It is the largest dimension of a Besicovitch-Eggleston set inside
        S_theta, i.e. the maximum of :func:`be_dimension` over tau with
        sum i tau_i = theta. For the uniform ternary system the maximum is
        found by a search along the feasible segment, to ``tol``; other
        systems go through the Gibbs form maximizer.

        :rtype: DimensionResult
    """
    from qsfrac import dim_opt

    theta = parse_numbers([theta])[0]
    if not 0 <= theta <= system.s - 1:
        raise DomainError('theta = %s is outside [0, %d]' % (theta, system.s - 1))
    if system.s == 3 and system.is_uniform:
        constraint = dim_opt.LinearConstraint((0, 1, 2), theta)
        optimum = dim_opt.maximize_be_constrained(system, constraint, tol)
    else:
        optimum = dim_opt.maximize_be_mean_constrained(system, theta)
    logger.debug('level set theta=%s: tau*=%s via %s', theta, optimum.tau.tau, optimum.method)
    return DimensionResult(optimum.dim, BE_FORMULA, None, backend_of(optimum.dim))
