"""
    Monte Carlo experiments
    ~~~~~~~~~~~~~~~~~~~~~~~

    Seeded sampling of digit prefixes. With the digit measure equal to the
    system weights the sampled numbers are uniform on [0, 1]; any other
    measure gives a singular distribution.

    Every trial draws from its own Philox generator keyed by (seed, trial),
    so trials can run in any order, on any number of threads, and still
    give the same numbers.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from itertools import count
import logging
import math

import numpy as np
from scipy import stats as scipy_stats

from qsfrac import settings
from qsfrac.digit_stats import RunningStats
from qsfrac.errors import DomainError
from qsfrac.errors import InternalDisagreement
from qsfrac.errors import NotLebesgueMode
from qsfrac.errors import SimplexViolation
from qsfrac.fractal_dim import FrequencyVector
from qsfrac.qs_system import EXACT
from qsfrac.qs_system import DigitStream
from qsfrac.qs_system import FLOAT_TOLERANCE
from qsfrac.qs_system import DigitWord
from qsfrac.qs_system import backend_of

logger = logging.getLogger(__name__)

# KS critical value at significance 0.01 is 1.628 / sqrt(N) for large N.
KS_CRITICAL_001 = 1.628

_TRIAL_KEY = 0
_STREAM_KEY = 1


def generator(seed, *key):
    """Philox generator for one (seed, key...) coordinate."""
    if not 0 <= seed < 2 ** 64:
        raise DomainError('seed must be a 64-bit unsigned integer, got %r' % seed)
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(sequence))


def _cumulative(measure):
    table = np.cumsum(np.asarray(measure, dtype=float))
    table[-1] = 1.0
    return table


def _inverse_cdf(table, u):
    return np.minimum(np.searchsorted(table, u, side='right'), len(table) - 1)


class SeededDigitStream(DigitStream):
    """
        Independent digits with P(digit = i) = measure_i.

        Digits come in chunks of ``STREAM_CHUNK``, chunk c from the
        generator keyed by (seed, c); the digits never depend on how the
        stream is read.
    """

    def __init__(self, s, seed=None, measure=None, chunk=None, max_digits=None):
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        if measure is None:
            measure = [1.0 / s] * s
        if len(measure) != s:
            raise SimplexViolation('measure has %d entries for %d digits' % (len(measure), s))
        self.measure = tuple(float(p) for p in FrequencyVector(tuple(measure)).tau)
        self.chunk = chunk or settings.STREAM_CHUNK
        generator(self.seed)
        super(SeededDigitStream, self).__init__(s, max_digits)

    def _blocks(self):
        table = _cumulative(self.measure)
        for index in count():
            u = generator(self.seed, _STREAM_KEY, index).random(self.chunk)
            yield _inverse_cdf(table, u).tolist()


@dataclass(frozen=True)
class ExperimentConfig:
    system: object
    n: int
    trials: int
    seed: int = settings.DEFAULT_SEED
    digit_measure: tuple = None

    def __post_init__(self):
        measure = self.digit_measure
        if measure is None:
            measure = self.system.q
        if len(measure) != self.system.s:
            raise SimplexViolation('digit measure has %d entries, the system has %d digits'
                                   % (len(measure), self.system.s))
        measure = tuple(float(p) for p in FrequencyVector(tuple(measure)).tau)
        object.__setattr__(self, 'digit_measure', measure)
        if self.n < 1:
            raise DomainError('n must be at least 1, got %d' % self.n)
        if self.trials < 1:
            raise DomainError('trials must be at least 1, got %d' % self.trials)
        generator(self.seed)

    @property
    def s(self):
        return self.system.s

    @property
    def lebesgue(self):
        return all(abs(p - float(w)) <= FLOAT_TOLERANCE
                   for p, w in zip(self.digit_measure, self.system.q))

    def to_dict(self):
        return {
            'q': [str(w) for w in self.system.q],
            'digit_measure': list(self.digit_measure),
            'n': self.n,
            'trials': self.trials,
            'seed': self.seed,
        }


def draw(cfg, trial=0):
    """Digits of one trial as an integer array."""
    u = generator(cfg.seed, _TRIAL_KEY, trial).random(cfg.n)
    return _inverse_cdf(_cumulative(cfg.digit_measure), u)


def sample_digit_prefix(cfg, trial=0, max_digits=None):
    """
        n digits drawn independently from the digit measure.

        :param ExperimentConfig cfg: the experiment
        :param int trial: which trial's generator to use
        :param int max_digits: the materialization cap, ``MAX_DIGITS`` by default

        :rtype: DigitWord
    """
    if max_digits is None:
        max_digits = settings.MAX_DIGITS
    if cfg.n > max_digits:
        raise DomainError('requested %d digits, the cap is %d' % (cfg.n, max_digits))
    return DigitWord(tuple(draw(cfg, trial).tolist()), cfg.s)


def trial_stats(cfg, trial):
    digits = draw(cfg, trial)
    stats = RunningStats.from_counts(np.bincount(digits, minlength=cfg.s))
    if stats.digit_sum != int(digits.sum()):
        raise InternalDisagreement('digit sum and counts disagree in trial %d' % trial)
    return stats


def decoded_value(system, digits):
    """Float value of a digit prefix, reading only as many digits as a float can hold."""
    beta = [float(b) for b in system.beta]
    q = [float(w) for w in system.q]
    value, scale = 0.0, 1.0
    for digit in digits:
        value += beta[digit] * scale
        scale *= q[digit]
        if scale < 2.0 ** -64:
            break
    return value


def _run_trials(cfg, fn, workers):
    if workers is None or workers <= 1:
        return [fn(trial) for trial in range(cfg.trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(cfg.trials)))


@dataclass(frozen=True)
class BorelReport:
    config: ExperimentConfig
    per_trial_max_dev: list
    bounds: list
    pass_fraction: float
    mean_of_means: float
    expected_mean: object
    identity_holds: bool = True


def borel_experiment(cfg, workers=1):
    """
        Empirical digit frequencies of Lebesgue-random numbers.

        A trial passes when every |nu_i - q_i| stays within
        4 sqrt(q_i (1 - q_i) / n).

        :rtype: BorelReport
    """
    if not cfg.lebesgue:
        raise NotLebesgueMode('the Borel experiment needs digit_measure = q')
    q = [float(w) for w in cfg.system.q]
    bounds = [4 * math.sqrt(p * (1 - p) / cfg.n) for p in q]
    logger.info('borel: %d trials of %d digits, seed %d', cfg.trials, cfg.n, cfg.seed)
    results = _run_trials(cfg, lambda trial: trial_stats(cfg, trial), workers)
    deviations, passed = [], 0
    for stats in results:
        devs = [abs(c / cfg.n - p) for c, p in zip(stats.counts, q)]
        deviations.append(max(devs))
        passed += all(dev <= bound for dev, bound in zip(devs, bounds))
    identity = all(stats.mean == sum(i * f for i, f in enumerate(stats.freqs))
                   for stats in results)
    expected = expected_mean(cfg.system)
    return BorelReport(
        config=cfg,
        per_trial_max_dev=deviations,
        bounds=bounds,
        pass_fraction=passed / cfg.trials,
        mean_of_means=math.fsum(float(stats.mean) for stats in results) / cfg.trials,
        expected_mean=expected,
        identity_holds=identity,
    )


@dataclass(frozen=True)
class MeanHistogram:
    config: ExperimentConfig
    bin_left: list
    counts: list
    bin_width: float
    mean: float
    variance: float
    expected_mean: float
    expected_variance: float
    means: list = field(repr=False, default=None)


def mean_distribution_experiment(cfg, bins=None, workers=1):
    """
        Histogram of the running mean of n digits over the trials.

        For independent digits the values concentrate at sum i p_i with
        variance Var(digit) / n.

        :rtype: MeanHistogram
    """
    if bins is None:
        bins = settings.HISTOGRAM_BINS
    means = np.array([float(stats.mean) for stats in
                      _run_trials(cfg, lambda trial: trial_stats(cfg, trial), workers)])
    counts, edges = np.histogram(means, bins=bins)
    index = np.arange(cfg.s, dtype=float)
    p = np.asarray(cfg.digit_measure)
    expected = float(np.dot(index, p))
    digit_variance = float(np.dot((index - expected) ** 2, p))
    return MeanHistogram(
        config=cfg,
        bin_left=edges[:-1].tolist(),
        counts=counts.tolist(),
        bin_width=float(edges[1] - edges[0]),
        mean=float(means.mean()),
        variance=float(means.var(ddof=1)) if cfg.trials > 1 else 0.0,
        expected_mean=expected,
        expected_variance=digit_variance / cfg.n,
        means=means.tolist(),
    )


@dataclass(frozen=True)
class UniformityReport:
    config: ExperimentConfig
    statistic: float
    pvalue: float
    critical_value: float
    passed: bool
    sample_mean: float


def uniformity_experiment(cfg, workers=1):
    """
        Kolmogorov-Smirnov check of the decoded samples against U[0, 1]
        at significance 0.01.

        :rtype: UniformityReport
    """
    values = _run_trials(cfg, lambda trial: decoded_value(cfg.system, draw(cfg, trial)),
                         workers)
    result = scipy_stats.kstest(values, 'uniform')
    critical = KS_CRITICAL_001 / math.sqrt(cfg.trials)
    if result.statistic > critical:
        logger.warning('KS statistic %.4f exceeds the 0.01 critical value %.4f',
                       result.statistic, critical)
    return UniformityReport(
        config=cfg,
        statistic=float(result.statistic),
        pvalue=float(result.pvalue),
        critical_value=critical,
        passed=bool(result.statistic <= critical),
        sample_mean=math.fsum(values) / len(values),
    )


def expected_mean(system):
    """sum i q_i, exact for exact systems."""
    if backend_of(system.q) == EXACT:
        return sum((i * w for i, w in enumerate(system.q)), Fraction(0))
    return math.fsum(i * w for i, w in enumerate(system.q))
