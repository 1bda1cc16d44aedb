"""
    Digit statistics
    ~~~~~~~~~~~~~~~~

    Digit counts N_i(x, n), running frequencies and running means of the
    first n digits. Everything read from a stream is an estimate at a finite
    position; exact limits are only computed for eventually periodic digits.
"""
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
import logging

from qsfrac.errors import DigitOutOfRange
from qsfrac.errors import DomainError

logger = logging.getLogger(__name__)

OscillationReport = namedtuple(
    'OscillationReport', ['estimate_a', 'estimate_b', 'gap', 'position_a', 'position_b'])


@dataclass(frozen=True)
class RunningStats:
    s: int
    n: int = 0
    counts: tuple = None
    digit_sum: int = 0

    def __post_init__(self):
        if self.counts is None:
            object.__setattr__(self, 'counts', (0,) * self.s)
        elif len(self.counts) != self.s:
            raise DomainError('expected %d counts, got %d' % (self.s, len(self.counts)))

    @classmethod
    def from_counts(cls, counts):
        counts = tuple(int(c) for c in counts)
        return cls(len(counts), sum(counts), counts,
                   sum(i * c for i, c in enumerate(counts)))

    def accumulate(self, digit):
        if not 0 <= digit < self.s:
            raise DigitOutOfRange('digit %d is outside {0..%d}' % (digit, self.s - 1))
        counts = list(self.counts)
        counts[digit] += 1
        return RunningStats(self.s, self.n + 1, tuple(counts), self.digit_sum + digit)

    def extend(self, digits):
        """Same as accumulating every digit in turn."""
        if not len(digits):
            return self
        if min(digits) < 0 or max(digits) >= self.s:
            bad = next(d for d in digits if not 0 <= d < self.s)
            raise DigitOutOfRange('digit %d is outside {0..%d}' % (bad, self.s - 1))
        counts = tuple(c + digits.count(i) for i, c in enumerate(self.counts))
        return RunningStats(self.s, self.n + len(digits), counts,
                            self.digit_sum + sum(digits))

    def _require_digits(self):
        if not self.n:
            raise DomainError('no digits have been accumulated yet')

    def frequency(self, digit):
        self._require_digits()
        return Fraction(self.counts[digit], self.n)

    @property
    def freqs(self):
        self._require_digits()
        return tuple(Fraction(c, self.n) for c in self.counts)

    @property
    def mean(self):
        self._require_digits()
        return Fraction(self.digit_sum, self.n)

    def to_report(self):
        return {
            'n': self.n,
            'counts': list(self.counts),
            'freqs': [float(f) for f in self.freqs],
            'mean': float(self.mean),
        }


def accumulate(stats, digit):
    """
        Adds one digit to the tallies.

        :param RunningStats stats: the tallies so far
        :param int digit: the next digit

        :returns: the updated tallies
        :rtype: RunningStats
    """
    return stats.accumulate(digit)


def _check_positions(positions):
    previous = 0
    for position in positions:
        if position <= previous:
            raise DomainError('checkpoints must be positive and strictly increasing, '
                              'got %d after %d' % (position, previous))
        previous = position


def running_stats_series(source, checkpoints):
    """
        Tallies of the first n digits of ``source`` at every checkpoint n.

        The stream is reset first, so the series always starts at digit one.

        :returns: ``(position, RunningStats)`` pairs
        :rtype: list
    """
    checkpoints = list(checkpoints)
    _check_positions(checkpoints)
    source.reset()
    stats = RunningStats(source.s)
    series = []
    for position in checkpoints:
        stats = stats.extend(source.pull(position - stats.n))
        series.append((position, stats))
    logger.debug('tallied %d digits over %d checkpoints', stats.n, len(checkpoints))
    return series


def running_mean_series(source, checkpoints):
    """Running mean of the first n digits at every checkpoint n, as exact fractions."""
    return [(position, stats.mean)
            for position, stats in running_stats_series(source, checkpoints)]


def periodic_frequency(periodic, digit):
    """Frequency of ``digit`` in an eventually periodic expansion."""
    periodic = periodic.canonical()
    if not 0 <= digit < periodic.s:
        raise DigitOutOfRange('digit %d is outside {0..%d}' % (digit, periodic.s - 1))
    return Fraction(periodic.period.count(digit), len(periodic.period))


def periodic_mean(periodic):
    """Asymptotic mean of an eventually periodic expansion; the preperiod never matters."""
    periodic = periodic.canonical()
    return Fraction(sum(periodic.period), len(periodic.period))


def mean_from_frequencies(tau):
    """r = nu_1 + 2 nu_2 + ... + (s-1) nu_{s-1}."""
    return sum((i * t for i, t in enumerate(tau.tau)), tau.tau[0] * 0)


def oscillation_report(source, positions_a, positions_b):
    """
        Running means of one stream along two families of positions.

        A gap that stays away from zero as the positions grow suggests that
        the running mean has no limit. It does not prove it.

        :returns: last mean along each family and their distance
        :rtype: OscillationReport
    """
    positions_a = list(positions_a)
    positions_b = list(positions_b)
    for positions in (positions_a, positions_b):
        if len(positions) < 3:
            raise DomainError('each checkpoint family needs at least 3 positions')
        _check_positions(positions)
    means = dict(running_mean_series(source, sorted(set(positions_a) | set(positions_b))))
    estimate_a = means[positions_a[-1]]
    estimate_b = means[positions_b[-1]]
    return OscillationReport(estimate_a, estimate_b, abs(estimate_a - estimate_b),
                             positions_a[-1], positions_b[-1])
