"""
    Routes
    ~~~~~~

    Every route answers with the same envelope as the command line.
"""
import logging

from flask import Blueprint
from flask import current_app
from flask import jsonify
from flask import request
from marshmallow import EXCLUDE
from marshmallow import ValidationError

from qsfrac import dim_opt
from qsfrac import fractal_dim
from qsfrac import qs_system
from qsfrac import schemas
from qsfrac import special_numbers
from qsfrac.errors import DomainError
from qsfrac.errors import QsfracError
from qsfrac.qs_system import EXACT
from qsfrac.qs_system import FLOAT
from qsfrac.qs_system import backend_of

bp = Blueprint('qsfrac', __name__)
logger = logging.getLogger(__name__)

OPTIMA = ('m0', 'm1', 'm2', 'family')


def respond(command, inputs, result, backend):
    return jsonify(schemas.envelope(command, inputs, result, backend))


def _body(schema):
    return schema.load(_json())


def _json():
    return request.get_json(force=True, silent=True) or {}


def _system(body):
    return schemas.SystemSchema(unknown=EXCLUDE).load(body)


def _word(body, system):
    return schemas.DigitWordSchema().load({'digits': body.get('digits', []), 's': system.s})


@bp.route('/encode', methods=['POST'])
def encode():
    data = _body(schemas.EncodeRequest())
    system = qs_system.new_system(data['q'])
    word = qs_system.encode(system, data['x'], data['n'], current_app.config['MAX_DIGITS'])
    return respond('encode', request.get_json(), {'digits': list(word.digits), 's': word.s},
                   backend_of(system.q, data['x']))


@bp.route('/decode', methods=['POST'])
def decode():
    """
        ``{"q": [...], "digits": [...]}`` decodes a finite word,
        ``{"q": [...], "preperiod": [...], "period": [...]}`` an eventually
        periodic one.
    """
    body = _json()
    system = _system(body)
    result = {'system': schemas.SystemSchema().dump(system)}
    if 'period' in body:
        periodic = schemas.PeriodicDigitsSchema().load({
            'preperiod': body.get('preperiod', []), 'period': body['period'], 's': system.s})
        value = qs_system.decode_periodic(system, periodic)
        result['canonical'] = schemas.PeriodicDigitsSchema().dump(periodic.canonical())
    else:
        value = qs_system.decode_word(system, _word(body, system))
    result.update(value=float(value), exact=schemas.exact_text(value))
    return respond('decode', body, result, backend_of(value))


@bp.route('/cylinder', methods=['POST'])
def cylinder():
    body = _json()
    system = _system(body)
    result = qs_system.cylinder(system, _word(body, system))
    return respond('cylinder', body, schemas.CylinderSchema().dump(result), system.backend)


@bp.route('/dim/be', methods=['POST'])
def dim_be():
    data = _body(schemas.BeRequest())
    result = fractal_dim.be_dimension(qs_system.new_system(data['q']), data['tau'])
    return respond('dim be', request.get_json(), schemas.DimensionResultSchema().dump(result),
                   result.backend)


@bp.route('/dim/moran', methods=['POST'])
def dim_moran():
    data = _body(schemas.MoranRequest())
    result = fractal_dim.moran_dimension(qs_system.new_system(data['q']), data['subset'],
                                         current_app.config['MORAN_TOLERANCE'])
    return respond('dim moran', request.get_json(),
                   schemas.DimensionResultSchema().dump(result), result.backend)


@bp.route('/dim/ak/<int:k>')
def dim_ak(k):
    result = fractal_dim.DimensionResult(fractal_dim.ak_dimension(k), fractal_dim.CLOSED_FORM,
                                         0.0, EXACT)
    return respond('dim ak', {'k': k}, schemas.DimensionResultSchema().dump(result), EXACT)


@bp.route('/opt/<name>')
def optimum(name):
    config = current_app.config
    dump = schemas.OptimumSchema().dump
    if name == 'm0':
        found = dim_opt.m0_optimum(config['GOLDEN_TOLERANCE'], config['AGREEMENT_TOLERANCE'])
    elif name == 'm1':
        found = dim_opt.m1_optimum(config['GOLDEN_TOLERANCE'], config['AGREEMENT_TOLERANCE'])
    elif name == 'm2':
        value = dim_opt.m2_dimension()
        return respond('opt m2', {}, {'tau': [1, 0, 0], 'dim': float(value),
                                      'exact': schemas.exact_text(value),
                                      'method': fractal_dim.BE_FORMULA}, backend_of(value))
    elif name == 'family':
        bounds = dim_opt.m_family(config['GOLDEN_TOLERANCE'])
        return respond('opt family', {}, {'m0': dump(bounds[0]), 'm1': dump(bounds[1]),
                                          'm2': dump(bounds[2]),
                                          'union': float(bounds['union'])}, FLOAT)
    else:
        raise DomainError('unknown optimum %r, expected one of %s' % (name, ', '.join(OPTIMA)))
    return respond('opt %s' % name, {}, dump(found), backend_of(found.dim, found.tau.tau))


@bp.route('/construct/<name>')
def construct(name):
    config = current_app.config
    n = request.args.get('n', type=int)
    if n is None:
        raise ValidationError({'n': ['a digit count is required']})
    options = {key: request.args.get(key, type=int)
               for key in ('c', 'd', 's', 'k', 'base') if key in request.args}
    source = special_numbers.named_stream(name, seed=config['FREE_DIGIT_SEED'],
                                          chunk=config['STREAM_CHUNK'], **options)
    if isinstance(source, qs_system.PeriodicDigits):
        source = qs_system.PeriodicStream(source, chunk=config['STREAM_CHUNK'])
    source.max_digits = config['MAX_DIGITS']
    word = source.prefix(n)
    inputs = dict(options, name=name, n=n)
    return respond('construct %s' % name, inputs, {'digits': list(word.digits), 's': word.s},
                   EXACT)


@bp.route('/cubic')
def cubic():
    coeffs = qs_system.parse_numbers(request.args.get('coeffs', ''))
    if len(coeffs) != 4:
        raise ValidationError({'coeffs': ['expected 4 coefficients, got %d' % len(coeffs)]})
    polynomial = dim_opt.Cubic(*coeffs)
    roots = dim_opt.solve_cubic_real(polynomial)
    result = {'coefficients': list(polynomial.coefficients), 'roots': roots,
              'residuals': [abs(polynomial(r)) for r in roots], 'count': len(roots)}
    return respond('cubic', {'coeffs': request.args.get('coeffs')},
                   schemas.RootsSchema().dump(result), FLOAT)


@bp.app_errorhandler(QsfracError)
def domain_error(error):
    logger.info('rejected %s: %s', request.path, error)
    return jsonify(error=str(error), kind=type(error).__name__), 422


@bp.app_errorhandler(ValidationError)
def invalid_request(error):
    return jsonify(error='invalid request', messages=error.messages), 400


@bp.app_errorhandler(404)
def page_not_found(error):
    return jsonify(error='not found', path=request.path), 404


@bp.app_errorhandler(405)
def method_not_allowed(error):
    return jsonify(error=error.description), 405
