"""
    Special numbers
    ~~~~~~~~~~~~~~~

    Digit sequences built on purpose: a number whose running mean of digits
    oscillates forever, members of the sets A_k, the Champernowne and
    Copeland-Erdos sequences, and the cyclic weakly normal numbers.
"""
from dataclasses import dataclass
from itertools import count
import logging

from qsfrac import settings
from qsfrac.errors import DigitOutOfRange
from qsfrac.errors import DomainError
from qsfrac.errors import EqualDigits
from qsfrac.errors import NonPositiveK
from qsfrac.monte_carlo import SeededDigitStream
from qsfrac.qs_system import DigitStream
from qsfrac.qs_system import PeriodicDigits

logger = logging.getLogger(__name__)


class OscillatingStream(DigitStream):
    """
        Round k is 2^(k-1) copies of d followed by 2^(k-1) copies of c:

            d c d d c c d d d d c c c c ...

        The running mean at the end of every d-run and at the end of every
        round tend to different values.
    """

    def __init__(self, c, d, s, max_digits=None):
        if c == d:
            raise EqualDigits('c and d must differ, both are %d' % c)
        for digit in (c, d):
            if not 0 <= digit < s:
                raise DigitOutOfRange('digit %d is outside {0..%d}' % (digit, s - 1))
        self.c = c
        self.d = d
        super(OscillatingStream, self).__init__(s, max_digits)

    def _blocks(self):
        for k in count(1):
            run = 2 ** (k - 1)
            yield [self.d] * run + [self.c] * run

    @staticmethod
    def d_run_ends(rounds):
        """Positions 3 * 2^(k-1) - 2 where the d-run of round k ends."""
        return [3 * 2 ** (k - 1) - 2 for k in range(1, rounds + 1)]

    @staticmethod
    def round_ends(rounds):
        """Positions 2 (2^k - 1) where round k ends."""
        return [2 * (2 ** k - 1) for k in range(1, rounds + 1)]


def oscillating_number(c, d, s=2):
    return OscillatingStream(c, d, s)


@dataclass(frozen=True)
class BlockSchedule:
    """
        Block layout of A_k: block m holds 2^m k free digits, then 2^(m-1)
        zeros, then 2^(m-1) ones, and ends at t(m) = 2 (k + 1) (2^m - 1).
    """
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise NonPositiveK('k must be a positive integer, got %r' % (self.k,))

    def t(self, m):
        return 2 * (self.k + 1) * (2 ** m - 1)

    def free_count(self, m):
        return 2 ** m * self.k

    def run_length(self, m):
        return 2 ** (m - 1)

    def boundaries(self, blocks):
        return [self.t(m) for m in range(1, blocks + 1)]

    def zero_run_end(self, m):
        return self.t(m - 1) + self.free_count(m) + self.run_length(m)

    def zero_run_ends(self, blocks):
        return [self.zero_run_end(m) for m in range(1, blocks + 1)]


class AkStream(DigitStream):

    def __init__(self, schedule, free_digits, s, max_digits=None):
        if s < 2:
            raise DomainError('alphabet size must be at least 2, got %d' % s)
        if free_digits.s > s:
            logger.debug('free source alphabet %d is wider than %d', free_digits.s, s)
        self.schedule = schedule
        self.free_digits = free_digits
        super(AkStream, self).__init__(s, max_digits)

    def _blocks(self):
        self.free_digits.reset()
        for m in count(1):
            free = self.free_digits.pull(self.schedule.free_count(m))
            if max(free) >= self.s:
                raise DigitOutOfRange('free digit %d is outside {0..%d}'
                                      % (max(free), self.s - 1))
            run = self.schedule.run_length(m)
            yield free + [0] * run + [1] * run

    def boundaries(self, blocks):
        return self.schedule.boundaries(blocks)

    def zero_run_ends(self, blocks):
        return self.schedule.zero_run_ends(blocks)


def ak_stream(schedule, free_digits=None, s=3, seed=None, chunk=None):
    """
        A member of A_k: the free positions of every block are read from
        ``free_digits``, by default a uniform source over s digits seeded
        with ``seed`` (``FREE_DIGIT_SEED`` when not given).

        :param BlockSchedule schedule: the block layout, or k itself
        :rtype: AkStream
    """
    if not isinstance(schedule, BlockSchedule):
        schedule = BlockSchedule(schedule)
    if free_digits is None:
        if seed is None:
            seed = settings.FREE_DIGIT_SEED
        free_digits = SeededDigitStream(s, seed, chunk=chunk)
    return AkStream(schedule, free_digits, s)


def _base_digits(n, base):
    digits = []
    while n:
        n, digit = divmod(n, base)
        digits.append(digit)
    return digits[::-1]


class ChampernowneStream(DigitStream):
    """1 2 3 ... written in ``base`` and concatenated."""

    def __init__(self, base=10, max_digits=None):
        super(ChampernowneStream, self).__init__(base, max_digits)

    def _blocks(self):
        for n in count(1):
            if self.s == 10:
                yield [int(ch) for ch in str(n)]
            else:
                yield _base_digits(n, self.s)


def champernowne_stream(base=10):
    return ChampernowneStream(base)


def primes():
    """Incremental sieve of Eratosthenes: 2, 3, 5, 7, 11, ..."""
    yield 2
    composites = {}
    for n in count(3, 2):
        step = composites.pop(n, None)
        if step is None:
            composites[n * n] = 2 * n
            yield n
        else:
            m = n + step
            while m in composites:
                m += step
            composites[m] = step


class CopelandErdosStream(DigitStream):
    """Decimal digits of 2, 3, 5, 7, 11, 13, ... concatenated."""

    def __init__(self, max_digits=None):
        super(CopelandErdosStream, self).__init__(10, max_digits)

    def _blocks(self):
        for p in primes():
            yield [int(ch) for ch in str(p)]


def copeland_erdos_stream():
    return CopelandErdosStream()


def cyclic_normal_stream(s):
    """The period (0 1 ... s-1): every digit has frequency 1/s."""
    if s < 2:
        raise DomainError('alphabet size must be at least 2, got %d' % s)
    return PeriodicDigits.of((), tuple(range(s)), s)


class PrefixedStream(DigitStream):
    """A finite word followed by another stream."""

    def __init__(self, prefix, tail, max_digits=None):
        if prefix.s != tail.s:
            raise DomainError('prefix and tail use different alphabets')
        self.prefix_word = prefix
        self.tail = tail
        super(PrefixedStream, self).__init__(tail.s, max_digits)

    def _blocks(self):
        yield list(self.prefix_word.digits)
        for block in self.tail.iter_blocks():
            yield block


def prefixed_stream(prefix, tail):
    return PrefixedStream(prefix, tail)


class MarkedStream(DigitStream):
    """
        The carrier's digits, except that position s^n + 1 (n = 1, 2, ...)
        holds (s - 1) b_n for the n-th marker bit b_n.

        The marked positions have density zero, so frequencies and means
        are those of the carrier, while distinct marker sequences give
        distinct numbers.
    """

    def __init__(self, carrier, markers, max_digits=None):
        self.carrier = carrier
        self.markers = markers
        super(MarkedStream, self).__init__(carrier.s, max_digits)

    def marked_positions(self, limit):
        positions, n = [], 1
        while self.s ** n + 1 <= limit:
            positions.append(self.s ** n + 1)
            n += 1
        return positions

    def _blocks(self):
        self.markers.reset()
        position, n = 0, 1
        mark = self.s + 1
        for block in self.carrier.iter_blocks():
            block = list(block)
            start, position = position, position + len(block)
            while mark <= position:
                bit = self.markers.next_digit()
                if bit not in (0, 1):
                    raise DigitOutOfRange('marker digit %d is not a bit' % bit)
                block[mark - start - 1] = (self.s - 1) * bit
                n += 1
                mark = self.s ** n + 1
            yield block


def marked_stream(carrier, markers):
    return MarkedStream(carrier, markers)


STREAMS = ('oscillating', 'ak', 'champernowne', 'copeland-erdos', 'cyclic')


def named_stream(name, c=0, d=1, s=None, k=1, base=10, seed=None, chunk=None):
    """
        The stream behind a ``construct`` name. ``seed`` and ``chunk`` only
        matter for ``ak``, whose free digits are random.

        :returns: a DigitStream, or PeriodicDigits for ``cyclic``
    """
    if name == 'oscillating':
        return oscillating_number(c, d, s or 2)
    if name == 'ak':
        return ak_stream(BlockSchedule(k), s=s or 3, seed=seed, chunk=chunk)
    if name == 'champernowne':
        return champernowne_stream(base if s is None else s)
    if name == 'copeland-erdos':
        return copeland_erdos_stream()
    if name == 'cyclic':
        return cyclic_normal_stream(s or 3)
    raise DomainError('unknown stream %r, expected one of %s' % (name, ', '.join(STREAMS)))
