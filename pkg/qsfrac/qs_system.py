"""
    Q_s numeral systems
    ~~~~~~~~~~~~~~~~~~~

    A Q_s system splits [0, 1) into s intervals of lengths q_0, ..., q_{s-1}
    and repeats the split inside every interval. The digits of a number are
    the indices of the nested intervals that contain it:

        x = beta[a1] + beta[a2]*q[a1] + beta[a3]*q[a1]*q[a2] + ...

    Weights given as :class:`fractions.Fraction` (or ints, or "p/q" strings)
    keep the whole system exact; any float weight switches it to floating
    point. The backend in use is reported as ``system.backend``.
"""
from bisect import bisect_right
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from functools import reduce
from itertools import accumulate
from itertools import product
import logging
import math
import operator
import re

from qsfrac import settings
from qsfrac.errors import DigitOutOfRange
from qsfrac.errors import DomainError
from qsfrac.errors import NonPositiveWeight
from qsfrac.errors import StreamExhausted
from qsfrac.errors import WeightSumMismatch

logger = logging.getLogger(__name__)

EXACT = 'exact'
FLOAT = 'float'

# float weights and frequencies must sum to 1 within this
FLOAT_TOLERANCE = 1e-12

_RATIONAL = re.compile(r'^[+-]?\d+(/\d+)?$')
_BELOW_ONE = math.nextafter(1.0, 0.0)


def parse_number(text):
    """
        Parses a user supplied number.

        Integers and "p/q" strings become exact fractions, anything with a
        decimal point or exponent becomes a float.

        :param text: a string, int, float or Fraction

        :returns: the parsed number
        :rtype: Fraction or float
    """
    if isinstance(text, bool):
        raise DomainError('booleans are not numbers here')
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        if not math.isfinite(text):
            raise DomainError('non-finite number %r' % text)
        return text
    text = str(text).strip()
    try:
        if _RATIONAL.match(text):
            return Fraction(text)
        value = float(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError('cannot read %r as a number' % text)
    if not math.isfinite(value):
        raise DomainError('non-finite number %r' % text)
    return value


def parse_numbers(text):
    """Comma separated list of :func:`parse_number` values."""
    if isinstance(text, str):
        text = [part for part in text.split(',') if part.strip()]
    return tuple(parse_number(part) for part in text)


def backend_of(*values):
    """``exact`` when every value is rational, ``float`` otherwise."""
    for value in values:
        if isinstance(value, (list, tuple)):
            if backend_of(*value) == FLOAT:
                return FLOAT
        elif isinstance(value, float):
            return FLOAT
    return EXACT


def to_backend(value, backend):
    if backend == FLOAT:
        return float(value)
    return Fraction(value)


@dataclass(frozen=True)
class QsSystem:
    """
        The weights q_i and cumulative offsets beta_j of a Q_s system.

        Construct it from the weights only; beta and the backend are
        derived.
    """
    q: tuple
    beta: tuple = field(init=False)
    backend: str = field(init=False)

    def __post_init__(self):
        weights = parse_numbers(self.q)
        if len(weights) < 2:
            raise DomainError('a Q_s system needs at least two weights')
        backend = backend_of(weights)
        weights = tuple(to_backend(w, backend) for w in weights)
        for i, w in enumerate(weights):
            if w <= 0:
                raise NonPositiveWeight('weight q_%d = %s is not positive' % (i, w))
        total = sum(weights)
        if backend == EXACT:
            if total != 1:
                raise WeightSumMismatch('weights sum to %s, not 1' % total)
        elif abs(total - 1.0) > FLOAT_TOLERANCE:
            raise WeightSumMismatch('weights sum to %r, not 1' % total)
        zero = Fraction(0) if backend == EXACT else 0.0
        beta = tuple(accumulate(weights[:-1], initial=zero))
        object.__setattr__(self, 'q', weights)
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'backend', backend)

    @classmethod
    def uniform(cls, s):
        if s < 2:
            raise DomainError('alphabet size must be at least 2, got %d' % s)
        return cls(tuple(Fraction(1, s) for _ in range(s)))

    @property
    def s(self):
        return len(self.q)

    @property
    def one(self):
        return Fraction(1) if self.backend == EXACT else 1.0

    @property
    def is_uniform(self):
        first = self.q[0]
        if self.backend == EXACT:
            return all(w == first for w in self.q)
        return all(abs(w - first) <= FLOAT_TOLERANCE for w in self.q)

    def select(self, y):
        """Index j with beta_j <= y < beta_{j+1}."""
        return bisect_right(self.beta, y) - 1

    def weight(self, digits):
        """Product of q over the digits, i.e. a cylinder length."""
        return reduce(operator.mul, (self.q[d] for d in digits), self.one)

    def check(self, digits):
        for position, digit in enumerate(digits):
            if not 0 <= digit < self.s:
                raise DigitOutOfRange(
                    'digit %d at position %d is outside {0..%d}'
                    % (digit, position + 1, self.s - 1))

    def __repr__(self):
        return "<QsSystem s={} q={} ({})>".format(
            self.s, [str(w) for w in self.q], self.backend)


def new_system(q):
    """
        Builds a Q_s system from its weights.

        :param q: sequence of positive weights summing to one, or a comma
            separated string such as ``"1/3,1/3,1/3"``.

        :returns: the system with its cumulative offsets
        :rtype: QsSystem
    """
    if isinstance(q, str):
        q = parse_numbers(q)
    return QsSystem(tuple(q))


@dataclass(frozen=True)
class DigitWord:
    digits: tuple
    s: int

    def __post_init__(self):
        digits = tuple(self.digits)
        if self.s < 2:
            raise DomainError('alphabet size must be at least 2, got %d' % self.s)
        if digits and (min(digits) < 0 or max(digits) >= self.s):
            for position, digit in enumerate(digits):
                if not 0 <= digit < self.s:
                    raise DigitOutOfRange(
                        'digit %d at position %d is outside {0..%d}'
                        % (digit, position + 1, self.s - 1))
        object.__setattr__(self, 'digits', digits)

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, index):
        return self.digits[index]

    def count(self, digit):
        return self.digits.count(digit)


@dataclass(frozen=True)
class PeriodicDigits:
    """Eventually periodic digits: ``preperiod`` followed by ``period`` forever."""
    preperiod: DigitWord
    period: DigitWord

    def __post_init__(self):
        if self.preperiod.s != self.period.s:
            raise DomainError('preperiod and period use different alphabets')
        if not len(self.period):
            raise DomainError('the period must contain at least one digit')

    @classmethod
    def of(cls, preperiod, period, s):
        return cls(DigitWord(tuple(preperiod), s), DigitWord(tuple(period), s))

    @property
    def s(self):
        return self.period.s

    def canonical(self):
        """
            The period-(0) form of a number written with an (s-1) tail.

            The number 1 has no such form and is returned unchanged.
        """
        top = self.s - 1
        if any(d != top for d in self.period):
            return self
        pre = self.preperiod.digits
        for index in range(len(pre) - 1, -1, -1):
            if pre[index] < top:
                head = pre[:index] + (pre[index] + 1,)
                return PeriodicDigits.of(head, (0,), self.s)
        return self


@dataclass(frozen=True)
class Cylinder:
    system: QsSystem
    prefix: DigitWord
    left: object
    length: object

    @property
    def right(self):
        return self.left + self.length

    def contains(self, x):
        return self.left <= x < self.right


def encode(system, x, n, max_digits=None):
    """
        First n digits of x in the system.

        Each step keeps the index j with beta_j <= y < beta_{j+1} and
        rescales y to (y - beta_j) / q_j, so boundary points get the
        period-(0) tail.

        :param QsSystem system: the numeral system
        :param x: a number in [0, 1)
        :param int n: how many digits to produce

        :returns: the digits
        :rtype: DigitWord
    """
    if max_digits is None:
        max_digits = settings.MAX_DIGITS
    x = parse_number(x)
    if not 0 <= x < 1:
        raise DomainError('x = %s is outside [0, 1)' % x)
    if n < 0:
        raise DomainError('digit count must be non-negative, got %d' % n)
    if n > max_digits:
        raise DomainError('requested %d digits, the cap is %d' % (n, max_digits))
    backend = FLOAT if FLOAT in (system.backend, backend_of(x)) else EXACT
    if backend == FLOAT and system.backend == EXACT:
        beta = tuple(float(b) for b in system.beta)
        q = tuple(float(w) for w in system.q)
    else:
        beta, q = system.beta, system.q
    y = to_backend(x, backend)
    digits = []
    for _ in range(n):
        j = bisect_right(beta, y) - 1
        y = (y - beta[j]) / q[j]
        if backend == FLOAT:
            # the rescaling multiplies rounding error by 1/q_j every step
            if y < 0.0:
                y = 0.0
            elif y >= 1.0:
                y = _BELOW_ONE
        digits.append(j)
    return DigitWord(tuple(digits), system.s)


def decode_word(system, word):
    """Left endpoint of the cylinder of ``word``: the series with a zero tail."""
    system.check(word)
    value = system.one - system.one
    scale = system.one
    for digit in word:
        value += system.beta[digit] * scale
        scale *= system.q[digit]
    return value


def decode_periodic(system, periodic):
    """
        Value of an eventually periodic expansion.

        The periodic part v solves v = decode(period) + weight(period) * v,
        which is exact for rational weights.
    """
    system.check(periodic.preperiod)
    system.check(periodic.period)
    head = decode_word(system, periodic.preperiod)
    scale = system.weight(periodic.preperiod)
    ratio = system.weight(periodic.period)
    tail = decode_word(system, periodic.period) / (system.one - ratio)
    return head + scale * tail


def cylinder(system, word):
    system.check(word)
    return Cylinder(system, word, decode_word(system, word), system.weight(word))


def cylinders(system, n):
    """All s^n cylinders of depth n, left to right."""
    for digits in product(range(system.s), repeat=n):
        yield cylinder(system, DigitWord(digits, system.s))


class DigitStream(object):
    """
        An unbounded, resettable source of digits.

        Subclasses describe their digits as a sequence of blocks in
        :meth:`_blocks`; reading through :meth:`next_digit` or :meth:`pull`
        walks those blocks and keeps ``position``. After :meth:`reset` the
        same digits come out again.
    """

    def __init__(self, s, max_digits=None):
        if s < 2:
            raise DomainError('alphabet size must be at least 2, got %d' % s)
        self.s = s
        self.max_digits = settings.MAX_DIGITS if max_digits is None else max_digits
        self.reset()

    def __repr__(self):
        return "<{}: s={} at {}>".format(type(self).__name__, self.s, self.position)

    def _blocks(self):
        raise NotImplementedError

    def reset(self):
        self._source = self._blocks()
        self._block = []
        self._offset = 0
        self.position = 0

    def _advance(self):
        for block in self._source:
            if len(block):
                self._block = block
                self._offset = 0
                return True
        return False

    def next_digit(self):
        if self._offset >= len(self._block) and not self._advance():
            raise StreamExhausted('stream ended after %d digits' % self.position)
        digit = self._block[self._offset]
        self._offset += 1
        self.position += 1
        return digit

    def pull(self, n):
        """The next n digits as a list. Not subject to the materialization cap."""
        out = []
        while len(out) < n:
            if self._offset >= len(self._block) and not self._advance():
                raise StreamExhausted(
                    'stream ended after %d digits, %d more were needed'
                    % (self.position, n - len(out)))
            chunk = self._block[self._offset:self._offset + n - len(out)]
            out.extend(chunk)
            self._offset += len(chunk)
            self.position += len(chunk)
        return out

    def take(self, n):
        """The next n digits as a :class:`DigitWord`, at most ``max_digits``."""
        if n > self.max_digits:
            raise DomainError('requested %d digits, the cap is %d' % (n, self.max_digits))
        return DigitWord(tuple(self.pull(n)), self.s)

    def prefix(self, n):
        self.reset()
        return self.take(n)

    def iter_blocks(self):
        """
            Restarts the stream and yields its construction blocks, moving
            ``position`` along.
        """
        self.reset()
        for block in self._source:
            self.position += len(block)
            yield block

    def __iter__(self):
        while True:
            try:
                yield self.next_digit()
            except StreamExhausted:
                return


class WordStream(DigitStream):
    """A finite word read as a stream; it runs dry after the last digit."""

    def __init__(self, word, max_digits=None):
        self.word = word
        super(WordStream, self).__init__(word.s, max_digits)

    def _blocks(self):
        yield list(self.word.digits)


class PeriodicStream(DigitStream):
    """The digits of PeriodicDigits, the period repeated in blocks of about ``chunk`` digits."""

    def __init__(self, periodic, max_digits=None, chunk=None):
        self.periodic = periodic
        self.chunk = chunk or settings.STREAM_CHUNK
        super(PeriodicStream, self).__init__(periodic.s, max_digits)

    def _blocks(self):
        yield list(self.periodic.preperiod.digits)
        period = list(self.periodic.period.digits)
        block = period * max(1, self.chunk // len(period))
        while True:
            yield block
