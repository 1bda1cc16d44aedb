"""
    Schemas
    ~~~~~~~

    marshmallow schemas for everything that crosses the command line or
    HTTP boundary. Exact rationals travel as "p/q" strings, floats as JSON
    numbers; non-finite numbers are never written.
"""
from fractions import Fraction
import math

from marshmallow import Schema
from marshmallow import ValidationError
from marshmallow import fields
from marshmallow import post_load
from marshmallow import validate
from marshmallow import validates

from qsfrac.dim_opt import LinearConstraint
from qsfrac.errors import DomainError
from qsfrac.errors import QsfracError
from qsfrac.fractal_dim import FrequencyVector
from qsfrac.qs_system import EXACT
from qsfrac.qs_system import FLOAT
from qsfrac.qs_system import DigitWord
from qsfrac.qs_system import PeriodicDigits
from qsfrac.qs_system import new_system
from qsfrac.qs_system import parse_number


def _finite(value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError('refusing to write the non-finite number %r' % value)
    return value


def exact_text(value):
    if isinstance(value, Fraction):
        return str(value)
    return None


class Real(fields.Field):
    """A float going out; "p/q", integers or decimals coming in."""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return _finite(value)

    def _deserialize(self, value, attr, data, **kwargs):
        try:
            return parse_number(value)
        except DomainError as error:
            raise ValidationError(str(error))


class Rational(Real):
    """Like :class:`Real`, but exact fractions go out as "p/q" strings."""

    def _serialize(self, value, attr, obj, **kwargs):
        if isinstance(value, Fraction):
            return str(value)
        return super(Rational, self)._serialize(value, attr, obj, **kwargs)


class SystemSchema(Schema):
    q = fields.List(Rational(), required=True)
    beta = fields.List(Rational(), dump_only=True)
    s = fields.Integer(dump_only=True)
    backend = fields.String(dump_only=True)

    @validates('q')
    def validate_q(self, value, **kwargs):
        if len(value) < 2:
            raise ValidationError('a Q_s system needs at least two weights')

    @post_load
    def make_system(self, data, **kwargs):
        try:
            return new_system(data['q'])
        except QsfracError as error:
            raise ValidationError(str(error), 'q')


class DigitWordSchema(Schema):
    digits = fields.List(fields.Integer(), required=True)
    s = fields.Integer(required=True, validate=validate.Range(min=2))

    @post_load
    def make_word(self, data, **kwargs):
        try:
            return DigitWord(tuple(data['digits']), data['s'])
        except QsfracError as error:
            raise ValidationError(str(error), 'digits')


class PeriodicDigitsSchema(Schema):
    preperiod = fields.Method('dump_preperiod', deserialize='load_digits', required=True)
    period = fields.Method('dump_period', deserialize='load_digits', required=True)
    s = fields.Integer(required=True, validate=validate.Range(min=2))

    def dump_preperiod(self, obj):
        return list(obj.preperiod.digits)

    def dump_period(self, obj):
        return list(obj.period.digits)

    def load_digits(self, value):
        if not isinstance(value, list) or not all(isinstance(d, int) for d in value):
            raise ValidationError('expected a list of integers')
        return tuple(value)

    @post_load
    def make_periodic(self, data, **kwargs):
        try:
            return PeriodicDigits.of(data['preperiod'], data['period'], data['s'])
        except QsfracError as error:
            raise ValidationError(str(error), 'period')


class CylinderSchema(Schema):
    prefix = fields.Function(lambda obj: list(obj.prefix.digits))
    left = Rational()
    length = Rational()
    right = Rational()


class RunningStatsSchema(Schema):
    n = fields.Integer()
    counts = fields.List(fields.Integer())
    freqs = fields.List(Real())
    mean = Real()
    exact_mean = fields.Function(lambda obj: exact_text(obj.mean))


class DimensionResultSchema(Schema):
    value = Real()
    exact = fields.Function(lambda obj: exact_text(obj.value))
    method = fields.String()
    residual = Real(allow_none=True)
    backend = fields.String()


class OptimumSchema(Schema):
    tau = fields.Function(lambda obj: [_finite(t) for t in obj.tau.tau])
    dim = Real()
    exact = fields.Function(lambda obj: exact_text(obj.dim))
    method = fields.String()
    stationarity_root = Real(allow_none=True)
    stationarity_residual = Real(allow_none=True)
    search_argmax = Real(allow_none=True)
    constraint_residual = Real(allow_none=True)
    note = fields.String(allow_none=True)


class RootsSchema(Schema):
    coefficients = fields.List(Real())
    roots = fields.List(Real())
    residuals = fields.List(Real())
    count = fields.Integer()


class OscillationSchema(Schema):
    estimate_a = Real()
    estimate_b = Real()
    gap = Real()
    exact_a = fields.Function(lambda obj: exact_text(obj.estimate_a))
    exact_b = fields.Function(lambda obj: exact_text(obj.estimate_b))
    position_a = fields.Integer()
    position_b = fields.Integer()


class BorelReportSchema(Schema):
    config = fields.Function(lambda obj: obj.config.to_dict())
    per_trial_max_dev = fields.List(Real())
    bounds = fields.List(Real())
    pass_fraction = Real()
    mean_of_means = Real()
    expected_mean = Real()
    identity_holds = fields.Boolean()


class HistogramSchema(Schema):
    config = fields.Function(lambda obj: obj.config.to_dict())
    bin_left = fields.List(Real())
    counts = fields.List(fields.Integer())
    bin_width = Real()
    mean = Real()
    variance = Real()
    expected_mean = Real()
    expected_variance = Real()


class UniformitySchema(Schema):
    config = fields.Function(lambda obj: obj.config.to_dict())
    statistic = Real()
    pvalue = Real()
    critical_value = Real()
    passed = fields.Boolean()
    sample_mean = Real()


class EnvelopeSchema(Schema):
    command = fields.String(required=True)
    inputs = fields.Dict()
    result = fields.Raw()
    backend = fields.String(validate=validate.OneOf([EXACT, FLOAT]))


def envelope(command, inputs, result, backend):
    """
        Wraps a dumped result with the command, its echoed inputs and the
        arithmetic backend that produced it.

        :rtype: dict
    """
    payload = {'command': command, 'inputs': inputs, 'result': result, 'backend': backend}
    errors = EnvelopeSchema().validate(payload)
    if errors:
        raise DomainError('malformed envelope: %s' % errors)
    return EnvelopeSchema().dump(payload)


class EncodeRequest(Schema):
    q = fields.List(Rational(), required=True)
    x = Rational(required=True)
    n = fields.Integer(required=True)

    @validates('n')
    def validate_n(self, value, **kwargs):
        if value < 0:
            raise ValidationError('n must be non-negative')


class BeRequest(Schema):
    q = fields.List(Rational(), required=True)
    tau = fields.List(Rational(), required=True)

    @post_load
    def make_tau(self, data, **kwargs):
        try:
            data['tau'] = FrequencyVector(tuple(data['tau']))
        except QsfracError as error:
            raise ValidationError(str(error), 'tau')
        return data


class MoranRequest(Schema):
    q = fields.List(Rational(), required=True)
    subset = fields.List(fields.Integer(), required=True)


class ConstraintRequest(Schema):
    q = fields.List(Rational(), load_default=lambda: ['1/3', '1/3', '1/3'])
    constraint = fields.String(required=True)

    @post_load
    def make_constraint(self, data, **kwargs):
        try:
            data['constraint'] = LinearConstraint.parse(data['constraint'])
        except QsfracError as error:
            raise ValidationError(str(error), 'constraint')
        return data
