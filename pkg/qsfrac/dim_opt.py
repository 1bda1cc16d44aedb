"""
    Dimension optimization
    ~~~~~~~~~~~~~~~~~~~~~~

    Lower bounds for the dimension of frequency-defined sets, found by
    maximizing the Besicovitch-Eggleston dimension over the frequency
    vectors the set admits.

    For the set M_0 = {x: r(x) = nu_0(x)} of the ternary system the
    constraint is 2 nu_1 + 3 nu_2 = 1. Writing x = nu_2, the stationarity
    condition of the dimension reduces to

        31 x^3 - 23 x^2 + 9 x - 1 = 0,

    whose only real root, in radicals, is

        x = (23 + cbrt(-3736 + sqrt(43175808)) + cbrt(-3736 - sqrt(43175808))) / 93
          ~ 0.16549.

    The numeric path is the trigonometric/Cardano solver with a Newton
    polish; the radical form is kept only as a cross-check.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
import math

import numpy as np
from scipy.special import xlogy

from qsfrac import settings
from qsfrac.errors import DegenerateLeadingCoefficient
from qsfrac.errors import DomainError
from qsfrac.errors import InfeasibleConstraint
from qsfrac.errors import InternalDisagreement
from qsfrac.errors import InvalidInterval
from qsfrac.fractal_dim import CLOSED_FORM
from qsfrac.fractal_dim import FrequencyVector
from qsfrac.fractal_dim import be_dimension
from qsfrac.qs_system import EXACT
from qsfrac.qs_system import QsSystem
from qsfrac.qs_system import backend_of
from qsfrac.qs_system import parse_number
from qsfrac.qs_system import parse_numbers
from qsfrac.qs_system import to_backend

logger = logging.getLogger(__name__)

INVPHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INVPHI2 = (3 - math.sqrt(5)) / 2  # 1 / phi^2

GOLDEN_SECTION = 'golden_section'
CARDANO = 'cardano'
DINKELBACH = 'dinkelbach'

LOG_BASE_ERRATUM = (
    'a bound of log_2 3 ~ 1.585 for M_1 exceeds 1 and cannot be the '
    'dimension of a subset of [0, 1]; the maximum is ln 2 / ln 3 = log_3 2')


@dataclass(frozen=True)
class Cubic:
    """a x^3 + b x^2 + c x + d"""
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'd'):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.a == 0:
            raise DegenerateLeadingCoefficient('the cubic coefficient is zero')

    @classmethod
    def parse(cls, text):
        coeffs = parse_numbers(text)
        if len(coeffs) != 4:
            raise DomainError('a cubic needs 4 coefficients, got %d' % len(coeffs))
        return cls(*coeffs)

    @property
    def coefficients(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def scale(self):
        return max(1.0, max(abs(c) for c in self.coefficients))

    def __call__(self, x):
        return ((self.a * x + self.b) * x + self.c) * x + self.d

    def derivative(self, x):
        return (3 * self.a * x + 2 * self.b) * x + self.c

    def depressed(self):
        """(p, q, shift) with x = t + shift and t^3 + p t + q = 0."""
        b, c, d = self.b / self.a, self.c / self.a, self.d / self.a
        p = c - b * b / 3
        q = 2 * b ** 3 / 27 - b * c / 3 + d
        return p, q, -b / 3


M0_STATIONARITY = Cubic(31, -23, 9, -1)


@dataclass(frozen=True)
class LinearConstraint:
    """sum coeffs_i * tau_i = rhs, read on the simplex."""
    coeffs: tuple
    rhs: object

    def __post_init__(self):
        coeffs = parse_numbers(self.coeffs)
        if len(set(coeffs)) < 2:
            raise DomainError('constraint coefficients are all equal, the constraint '
                              'is either empty or the whole simplex')
        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'rhs', parse_number(self.rhs))

    @classmethod
    def parse(cls, text):
        """Reads ``"c0,c1,c2=b"``."""
        if text.count('=') != 1:
            raise DomainError('constraint %r is not of the form "c0,c1,...=b"' % text)
        left, right = text.split('=')
        return cls(parse_numbers(left), parse_number(right))

    def residual(self, tau):
        return abs(sum(c * t for c, t in zip(self.coeffs, tau)) - self.rhs)


@dataclass(frozen=True)
class Optimum1D:
    argmax: float
    max: float


@dataclass(frozen=True)
class Optimum:
    tau: FrequencyVector
    dim: object
    method: str
    stationarity_root: float = None
    stationarity_residual: float = None
    search_argmax: float = None
    constraint_residual: float = None
    note: str = None


def _cbrt(x):
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _polish(cubic, x, steps=50):
    best, best_residual = x, abs(cubic(x))
    for _ in range(steps):
        if best_residual == 0.0:
            break
        slope = cubic.derivative(x)
        if slope == 0.0:
            break
        x = x - cubic(x) / slope
        residual = abs(cubic(x))
        if residual < best_residual:
            best, best_residual = x, residual
        elif residual > 10 * best_residual:
            break
    return best


def solve_cubic_real(cubic):
    """
        Real roots of a cubic, each polished by Newton's method.

        One real root uses Cardano's radicals, three real roots use the
        trigonometric form. Coinciding roots are reported once.

        :param Cubic cubic: the polynomial

        :returns: the real roots in increasing order
        :rtype: list
    """
    p, q, shift = cubic.depressed()
    disc = (q / 2) ** 2 + (p / 3) ** 3
    size = max((q / 2) ** 2, abs(p / 3) ** 3, 1e-300)
    if abs(p) <= 1e-14 * max(1.0, abs(shift)) ** 2 and abs(q) <= 1e-14 * max(1.0, abs(shift)) ** 3:
        roots = [0.0]
    elif abs(disc) <= 1e-12 * size:
        roots = [3 * q / p, -3 * q / (2 * p)]
    elif disc > 0:
        root = math.sqrt(disc)
        roots = [_cbrt(-q / 2 + root) + _cbrt(-q / 2 - root)]
    else:
        m = 2 * math.sqrt(-p / 3)
        cosine = max(-1.0, min(1.0, 3 * q / (p * m)))
        angle = math.acos(cosine) / 3
        roots = [m * math.cos(angle - 2 * math.pi * k / 3) for k in range(3)]
    polished = sorted(_polish(cubic, t + shift) for t in roots)
    distinct = []
    for root in polished:
        if not distinct or abs(root - distinct[-1]) > 1e-7 * max(1.0, abs(root)):
            distinct.append(root)
    for root in distinct:
        residual = abs(cubic(root))
        if residual > 1e-12 * cubic.scale:
            logger.warning('cubic root %r keeps residual %.3g', root, residual)
    logger.debug('cubic %s: roots %s', cubic.coefficients, distinct)
    return distinct


def radical_root(cubic):
    """The single real root straight from Cardano's radicals, unpolished."""
    p, q, shift = cubic.depressed()
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if disc <= 0:
        raise DomainError('the cubic has three real roots; use solve_cubic_real')
    root = math.sqrt(disc)
    return _cbrt(-q / 2 + root) + _cbrt(-q / 2 - root) + shift


def maximize_1d(f, lo, hi, tol=None):
    """
        Golden-section search for the maximum of f on [lo, hi].

        f is assumed unimodal on the interval. The endpoints are never
        evaluated.

        :returns: midpoint of the final bracket and f there
        :rtype: Optimum1D
    """
    if tol is None:
        tol = settings.GOLDEN_TOLERANCE
    if not lo < hi:
        raise InvalidInterval('need lo < hi, got [%r, %r]' % (lo, hi))
    if tol <= 0:
        raise InvalidInterval('tolerance must be positive, got %r' % tol)
    lo, hi = float(lo), float(hi)
    h = hi - lo
    if h > tol:
        n = int(math.ceil(math.log(tol / h) / math.log(INVPHI)))
        logger.debug('golden section: %d iterations on [%r, %r]', n, lo, hi)
        c = lo + INVPHI2 * h
        d = lo + INVPHI * h
        yc = f(c)
        yd = f(d)
        for _ in range(n - 1):
            if yc > yd:
                hi = d
                d = c
                yd = yc
                h = INVPHI * h
                c = lo + INVPHI2 * h
                yc = f(c)
            else:
                lo = c
                c = d
                yc = yd
                h = INVPHI * h
                d = lo + INVPHI * h
                yd = f(d)
        if yc > yd:
            hi = d
        else:
            lo = c
    x = (lo + hi) / 2
    return Optimum1D(x, f(x))


def _dimension(tau, log_q):
    """BE dimension from raw floats, for use inside searches."""
    tau = np.asarray(tau, dtype=float)
    return float(np.sum(xlogy(tau, tau)) / np.dot(tau, log_q)) + 0.0


_LN3 = math.log(3)


def m0_objective(x):
    """Dimension of E[nu_0, nu_1, nu_2] along 2 nu_1 + 3 nu_2 = 1, with x = nu_2."""
    nu1 = 0.5 - 1.5 * x
    nu0 = 0.5 + 0.5 * x
    return -float(xlogy(x, x) + xlogy(nu1, nu1) + xlogy(nu0, nu0)) / _LN3


def binary_objective(p):
    """Dimension of E[p, 1 - p, 0] in the uniform ternary system."""
    return -float(xlogy(p, p) + xlogy(1 - p, 1 - p)) / _LN3


def m0_optimum(tol=None, agreement=None):
    """
        Largest dimension of a Besicovitch-Eggleston subset of M_0.

        The stationary point is found twice, as the root of the
        stationarity cubic in (0, 1/3) and by golden-section search on the
        dimension itself; the two must agree.

        :rtype: Optimum
    """
    if agreement is None:
        agreement = settings.AGREEMENT_TOLERANCE
    roots = [r for r in solve_cubic_real(M0_STATIONARITY) if 0.0 < r < 1.0 / 3.0]
    if len(roots) != 1:
        raise InternalDisagreement('expected one stationary point in (0, 1/3), found %s'
                                   % roots)
    root = roots[0]
    search = maximize_1d(m0_objective, 0.0, 1.0 / 3.0, tol)
    if abs(search.argmax - root) > agreement:
        raise InternalDisagreement(
            'cubic root %r and golden-section argmax %r differ by %.3g'
            % (root, search.argmax, abs(search.argmax - root)))
    tau = FrequencyVector((0.5 + 0.5 * root, 0.5 - 1.5 * root, root))
    dim = be_dimension(QsSystem.uniform(3), tau).value
    return Optimum(
        tau=tau,
        dim=dim,
        method=CARDANO,
        stationarity_root=root,
        stationarity_residual=abs(M0_STATIONARITY(root)),
        search_argmax=search.argmax,
        constraint_residual=abs(2 * tau[1] + 3 * tau[2] - 1),
    )


def m1_optimum(tol=None, agreement=None):
    """
        Largest dimension of a Besicovitch-Eggleston subset of M_1, where
        nu_2 = 0 and nu_1 = 1 - nu_0.

        The binary entropy has derivative ln((1 - p) / p), which vanishes
        only at p = 1/2.

        :rtype: Optimum
    """
    if agreement is None:
        agreement = settings.AGREEMENT_TOLERANCE
    p = Fraction(1, 1 + 1)
    search = maximize_1d(binary_objective, 0.0, 1.0, tol)
    if abs(search.argmax - p) > agreement:
        raise InternalDisagreement('stationary point %s and golden-section argmax %r differ'
                                   % (p, search.argmax))
    tau = FrequencyVector((p, 1 - p, Fraction(0)))
    dim = be_dimension(QsSystem.uniform(3), tau).value
    return Optimum(
        tau=tau,
        dim=dim,
        method=CLOSED_FORM,
        stationarity_root=float(p),
        stationarity_residual=abs(math.log((1 - p) / p)),
        search_argmax=search.argmax,
        constraint_residual=0.0,
        note=LOG_BASE_ERRATUM,
    )


def m2_dimension():
    """M_2 forces nu_1 = nu_2 = 0, so it is E[1, 0, 0] and has dimension 0."""
    tau = FrequencyVector((1, 0, 0))
    return be_dimension(QsSystem.uniform(3), tau).value


def _affine_segment(constraint, backend):
    """
        Solves the constraint and sum tau = 1 for two entries in terms of the
        third. Returns the free index and tau(t) as (offset, slope) pairs.
    """
    c = [to_backend(v, backend) for v in constraint.coeffs]
    b = to_backend(constraint.rhs, backend)
    direction = (c[2] - c[1], c[0] - c[2], c[1] - c[0])
    k = max(range(3), key=lambda n: abs(direction[n]))
    i, j = [n for n in range(3) if n != k]
    one = to_backend(1, backend)

    def point(t):
        tau = [None] * 3
        tau[k] = t
        tau[i] = (c[j] * (one - t) - (b - c[k] * t)) / (c[j] - c[i])
        tau[j] = one - t - tau[i]
        return tau

    start, end = point(one - one), point(one)
    return k, [(start[n], end[n] - start[n]) for n in range(3)]


def _feasible_range(segment, backend):
    lo, hi = to_backend(0, backend), to_backend(1, backend)
    slack = 0 if backend == EXACT else 1e-15
    for offset, slope in segment:
        if slope > 0:
            lo = max(lo, -offset / slope)
        elif slope < 0:
            hi = min(hi, -offset / slope)
        elif offset < -slack:
            return None
    if lo > hi + slack:
        return None
    return lo, max(lo, hi)


def maximize_be_constrained(system, constraint, tol=None):
    """
        Maximizes the Besicovitch-Eggleston dimension of a ternary system
        over the frequency vectors that satisfy a linear constraint.

        The constraint and sum tau = 1 leave a segment with one free
        entry; the search runs along that segment. The value found is a
        dimension actually attained, hence a lower bound; for uniform
        weights the objective is concave and the bound is the maximum.

        :param QsSystem system: a system with s = 3
        :param LinearConstraint constraint: the constraint
        :rtype: Optimum
    """
    if system.s != 3 or len(constraint.coeffs) != 3:
        raise DomainError('constrained search works on ternary systems only')
    backend = backend_of(system.q, constraint.coeffs, [constraint.rhs])
    free, segment = _affine_segment(constraint, backend)
    bounds = _feasible_range(segment, backend)
    if bounds is None:
        raise InfeasibleConstraint('no frequency vector satisfies %s = %s'
                                   % (list(map(str, constraint.coeffs)), constraint.rhs))
    lo, hi = bounds

    def tau_at(t):
        return [max(offset + slope * t, 0 * t) for offset, slope in segment]

    if hi - lo <= (0 if backend == EXACT else 1e-15):
        tau = FrequencyVector(tuple(tau_at(lo)))
        dim = be_dimension(system, tau).value
        return Optimum(tau=tau, dim=dim, method=CLOSED_FORM,
                       constraint_residual=float(constraint.residual(tau)))

    log_q = np.log([float(w) for w in system.q])
    search = maximize_1d(lambda t: _dimension(tau_at(t), log_q), float(lo), float(hi), tol)
    raw = [float(v) for v in tau_at(search.argmax)]
    total = sum(raw)
    tau = FrequencyVector(tuple(v / total for v in raw))
    dim = be_dimension(system, tau).value
    logger.debug('constrained search on tau_%d in [%s, %s]: argmax %r, dim %r',
                 free, lo, hi, search.argmax, dim)
    return Optimum(tau=tau, dim=dim, method=GOLDEN_SECTION,
                   search_argmax=search.argmax,
                   constraint_residual=float(constraint.residual(tau)))


def m_constraint(i):
    """r = nu_i for the ternary system, as sum_j (j - [j = i]) tau_j = 0."""
    if i not in (0, 1, 2):
        raise DomainError('i must be 0, 1 or 2, got %r' % (i,))
    return LinearConstraint(tuple(j - (1 if j == i else 0) for j in range(3)), 0)


def m_family(tol=None):
    """
        Lower bounds for M_0, M_1, M_2 and for their union M, each
        searched to ``tol``.

        :returns: ``{0: Optimum, 1: Optimum, 2: Optimum, 'union': dim}``
        :rtype: dict
    """
    system = QsSystem.uniform(3)
    bounds = {i: maximize_be_constrained(system, m_constraint(i), tol) for i in range(3)}
    bounds['union'] = max(bounds[i].dim for i in range(3))
    return bounds


def _gibbs(log_weights, lam, index):
    logits = log_weights + lam * index
    logits = logits - logits.max()
    w = np.exp(logits)
    return w / w.sum()


def _match_mean(log_weights, theta, index):
    """lambda whose Gibbs vector has mean theta; the mean rises with lambda."""
    lo, hi = -1.0, 1.0
    while np.dot(_gibbs(log_weights, lo, index), index) > theta:
        lo *= 2
    while np.dot(_gibbs(log_weights, hi, index), index) < theta:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if np.dot(_gibbs(log_weights, mid, index), index) < theta:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def maximize_be_mean_constrained(system, theta, max_iterations=100):
    """
        Maximizes the Besicovitch-Eggleston dimension over tau with
        sum i tau_i = theta, for any alphabet and weights.

        Dinkelbach iteration: for the current ratio alpha the concave
        problem max H(tau) + alpha * sum tau_i ln q_i under the mean
        constraint is solved by tau_i ~ q_i^alpha * exp(lambda * i), and
        alpha moves to the dimension of that tau.

        :rtype: Optimum
    """
    s = system.s
    theta = parse_number(theta)
    if not 0 <= theta <= s - 1:
        raise DomainError('theta = %s is outside [0, %d]' % (theta, s - 1))
    if theta in (0, s - 1):
        corner = [0] * s
        corner[int(theta)] = 1
        tau = FrequencyVector(tuple(corner))
        return Optimum(tau=tau, dim=be_dimension(system, tau).value, method=CLOSED_FORM,
                       constraint_residual=0.0)
    log_q = np.log([float(w) for w in system.q])
    index = np.arange(s, dtype=float)
    theta = float(theta)
    alpha = 1.0
    for iteration in range(max_iterations):
        weights = _gibbs(alpha * log_q, _match_mean(alpha * log_q, theta, index), index)
        ratio = _dimension(weights, log_q)
        if abs(ratio - alpha) <= 1e-14:
            alpha = ratio
            break
        alpha = ratio
    logger.debug('dinkelbach: %d iterations, alpha=%r', iteration + 1, alpha)
    tau = FrequencyVector(tuple(float(w) for w in weights / weights.sum()))
    return Optimum(tau=tau, dim=be_dimension(system, tau).value, method=DINKELBACH,
                   constraint_residual=abs(float(np.dot(tau.tau, index)) - theta))
