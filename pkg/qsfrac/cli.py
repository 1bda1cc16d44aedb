"""
    Command line
    ~~~~~~~~~~~~

    ``python -m qsfrac <command> ...``. Every command is a thin adapter over
    one library operation and prints an envelope::

        {"command": ..., "inputs": {...}, "result": {...}, "backend": "exact"}

    Exit status is 0 on success, 2 for malformed arguments and 1 when the
    operation itself rejects its input.
"""
import csv
import io
import json
import logging

import click

from qsfrac import digit_stats
from qsfrac import dim_opt
from qsfrac import fractal_dim
from qsfrac import monte_carlo
from qsfrac import qs_system
from qsfrac import schemas
from qsfrac import special_numbers
from qsfrac.errors import DomainError
from qsfrac.errors import QsfracError
from qsfrac.qs_system import EXACT
from qsfrac.qs_system import FLOAT
from qsfrac.qs_system import backend_of
from qsfrac.settings import configure_logging
from qsfrac.settings import load_config

logger = logging.getLogger(__name__)


class NumberType(click.ParamType):
    name = 'number'

    def convert(self, value, param, ctx):
        try:
            return qs_system.parse_number(value)
        except DomainError as error:
            self.fail(str(error), param, ctx)


class NumberListType(click.ParamType):
    name = 'numbers'

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return qs_system.parse_numbers(value)
        except DomainError as error:
            self.fail(str(error), param, ctx)


class IntListType(click.ParamType):
    name = 'integers'

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return tuple(int(part) for part in value.split(',') if part.strip())
        except ValueError:
            self.fail('%r is not a comma separated list of integers' % value, param, ctx)


NUMBER = NumberType()
NUMBERS = NumberListType()
INTEGERS = IntListType()


def _system_callback(ctx, param, value):
    if value is None:
        return None
    try:
        return qs_system.new_system(value)
    except QsfracError as error:
        raise click.BadParameter(str(error), ctx=ctx, param=param)


def _word(digits, s, hint='--digits'):
    try:
        return qs_system.DigitWord(tuple(digits or ()), s)
    except QsfracError as error:
        raise click.BadParameter(str(error), param_hint=hint)


def q_option(required=True, default=None):
    return click.option('--q', 'system', type=NUMBERS, required=required, default=default,
                        callback=_system_callback,
                        help='Weights q_0,...,q_{s-1}; "p/q" entries keep arithmetic exact.')


format_option = click.option('--format', 'fmt', type=click.Choice(['json', 'csv']),
                             default='json', show_default=True)


def _inputs(ctx):
    echoed = {}
    for key, value in ctx.params.items():
        if value is None or key == 'fmt':
            continue
        if isinstance(value, qs_system.QsSystem):
            value = [str(w) for w in value.q]
        elif isinstance(value, tuple):
            value = [str(v) if not isinstance(v, int) else v for v in value]
        elif not isinstance(value, (int, str, bool)):
            value = str(value)
        echoed[key] = value
    return echoed


def _flat_rows(result):
    rows = [['field', 'value']]
    for key, value in result.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
        rows.append([key, value])
    return rows


def emit(ctx, result, backend, rows=None):
    """Prints the envelope, or the CSV rows when ``--format csv``."""
    command = ctx.command_path.split(' ', 1)[-1]
    payload = schemas.envelope(command, _inputs(ctx), result, backend)
    if ctx.params.get('fmt') == 'csv':
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator='\n').writerows(rows or _flat_rows(result))
        click.echo(buffer.getvalue(), nl=False)
    else:
        click.echo(json.dumps(payload))


class QsfracGroup(click.Group):

    def invoke(self, ctx):
        try:
            return super(QsfracGroup, self).invoke(ctx)
        except QsfracError as error:
            raise click.ClickException(str(error))


@click.group(cls=QsfracGroup)
@click.option('--config', 'config_dir', type=click.Path(file_okay=False), default=None,
              help='Directory holding config.py (default: current directory).')
@click.option('--verbose', is_flag=True, help='Log at DEBUG level.')
@click.pass_context
def cli(ctx, config_dir, verbose):
    """Q_s-representations, digit statistics and fractal dimensions."""
    ctx.obj = load_config(config_dir)
    configure_logging('DEBUG' if verbose else ctx.obj['LOG_LEVEL'])


def _cap(ctx, max_digits):
    return max_digits if max_digits is not None else ctx.obj['MAX_DIGITS']


def _streamed(ctx, source):
    if isinstance(source, qs_system.PeriodicDigits):
        source = qs_system.PeriodicStream(source, chunk=ctx.obj['STREAM_CHUNK'])
    return source


def _named(ctx, name, **options):
    """A named stream seeded and chunked from the loaded configuration."""
    return _streamed(ctx, special_numbers.named_stream(
        name, seed=ctx.obj['FREE_DIGIT_SEED'], chunk=ctx.obj['STREAM_CHUNK'], **options))


@cli.command()
@q_option()
@click.option('--x', type=NUMBER, required=True, help='Point of [0, 1).')
@click.option('--n', type=int, required=True, help='Number of digits.')
@click.option('--max-digits', type=int, default=None)
@format_option
@click.pass_context
def encode(ctx, system, x, n, max_digits, fmt):
    """First n digits of x."""
    word = qs_system.encode(system, x, n, _cap(ctx, max_digits))
    rows = [['position', 'digit']] + [[i + 1, d] for i, d in enumerate(word)]
    emit(ctx, {'digits': list(word.digits), 's': word.s}, backend_of(system.q, x), rows)


@cli.command()
@q_option()
@click.option('--digits', type=INTEGERS, default='', help='Digits (the preperiod when --period is given).')
@click.option('--period', type=INTEGERS, default=None, help='Repeating digits.')
@format_option
@click.pass_context
def decode(ctx, system, digits, period, fmt):
    """Value of a finite or eventually periodic expansion."""
    word = _word(digits, system.s)
    result = {'system': schemas.SystemSchema().dump(system)}
    if period is not None:
        if not period:
            raise click.BadParameter('the period needs at least one digit', param_hint='--period')
        periodic = qs_system.PeriodicDigits(word, _word(period, system.s, '--period'))
        value = qs_system.decode_periodic(system, periodic)
        result['canonical'] = schemas.PeriodicDigitsSchema().dump(periodic.canonical())
    else:
        value = qs_system.decode_word(system, word)
    result.update(value=float(value), exact=schemas.exact_text(value))
    emit(ctx, result, backend_of(value))


@cli.command()
@q_option()
@click.option('--digits', type=INTEGERS, required=True)
@format_option
@click.pass_context
def cylinder(ctx, system, digits, fmt):
    """Left endpoint and length of the cylinder of a digit word."""
    result = qs_system.cylinder(system, _word(digits, system.s))
    emit(ctx, schemas.CylinderSchema().dump(result), system.backend)


@cli.command()
@click.option('--digits', type=INTEGERS, default=None, help='A finite digit word.')
@click.option('--preperiod', type=INTEGERS, default=None)
@click.option('--period', type=INTEGERS, default=None, help='Exact statistics of a periodic expansion.')
@click.option('--stream', type=click.Choice(special_numbers.STREAMS), default=None)
@click.option('--checkpoints', type=INTEGERS, default=None, help='Positions for a stream series.')
@click.option('--s', type=int, default=None, help='Alphabet size.')
@click.option('--c', type=int, default=0)
@click.option('--d', type=int, default=1)
@click.option('--k', type=int, default=1)
@format_option
@click.pass_context
def stats(ctx, digits, preperiod, period, stream, checkpoints, s, c, d, k, fmt):
    """Digit counts, frequencies and running means."""
    chosen = [name for name, value in (('--digits', digits), ('--period', period),
                                       ('--stream', stream)) if value is not None]
    if len(chosen) != 1:
        raise click.UsageError('give exactly one of --digits, --period, --stream')
    if digits is not None:
        word = _word(digits, s or max(max(digits, default=0) + 1, 2))
        result = digit_stats.RunningStats(word.s).extend(word.digits)
        emit(ctx, schemas.RunningStatsSchema().dump(result), EXACT)
        return
    if period is not None:
        alphabet = s or max(max(period + (preperiod or ()), default=0) + 1, 2)
        periodic = qs_system.PeriodicDigits(_word(preperiod, alphabet, '--preperiod'),
                                            _word(period, alphabet, '--period'))
        freqs = [digit_stats.periodic_frequency(periodic, i) for i in range(alphabet)]
        mean = digit_stats.periodic_mean(periodic)
        emit(ctx, {'freqs': [float(f) for f in freqs],
                   'exact_freqs': [str(f) for f in freqs],
                   'mean': float(mean), 'exact_mean': str(mean)}, EXACT)
        return
    if not checkpoints:
        raise click.BadParameter('a stream series needs checkpoints', param_hint='--checkpoints')
    source = _named(ctx, stream, c=c, d=d, s=s, k=k)
    series = digit_stats.running_stats_series(source, checkpoints)
    points = [{'position': position, 'mean': float(point.mean),
               'exact_mean': str(point.mean), 'freqs': [float(f) for f in point.freqs]}
              for position, point in series]
    header = ['position', 'mean'] + ['freq_%d' % i for i in range(source.s)]
    rows = [header] + [[p['position'], p['mean']] + p['freqs'] for p in points]
    emit(ctx, {'series': points}, EXACT, rows)


@cli.command()
@click.option('--stream', type=click.Choice(['oscillating', 'ak']), default='oscillating')
@click.option('--rounds', type=int, default=10, show_default=True)
@click.option('--s', type=int, default=None)
@click.option('--c', type=int, default=0)
@click.option('--d', type=int, default=1)
@click.option('--k', type=int, default=1)
@format_option
@click.pass_context
def oscillation(ctx, stream, rounds, s, c, d, k, fmt):
    """Running means along two checkpoint families of one stream."""
    source = _named(ctx, stream, c=c, d=d, s=s, k=k)
    if stream == 'oscillating':
        family_a = source.d_run_ends(rounds)
        family_b = source.round_ends(rounds)
    else:
        family_a = source.boundaries(rounds)
        family_b = source.zero_run_ends(rounds)
    report = digit_stats.oscillation_report(source, family_a, family_b)
    emit(ctx, schemas.OscillationSchema().dump(report), EXACT)


@cli.group(cls=QsfracGroup)
def dim():
    """Hausdorff-Besicovitch dimensions."""


@dim.command('be')
@q_option(required=False, default='1/3,1/3,1/3')
@click.option('--tau', type=NUMBERS, required=True, help='Digit frequencies.')
@format_option
@click.pass_context
def dim_be(ctx, system, tau, fmt):
    """Dimension of the Besicovitch-Eggleston set E[tau]."""
    result = fractal_dim.be_dimension(system, fractal_dim.FrequencyVector(tau))
    emit(ctx, schemas.DimensionResultSchema().dump(result), result.backend)


@dim.command('moran')
@q_option()
@click.option('--subset', type=INTEGERS, required=True, help='Allowed digits V.')
@format_option
@click.pass_context
def dim_moran(ctx, system, subset, fmt):
    """Dimension of the Cantor-type set C[Q_s, V]."""
    result = fractal_dim.moran_dimension(system, subset, ctx.obj['MORAN_TOLERANCE'])
    emit(ctx, schemas.DimensionResultSchema().dump(result), result.backend)


@dim.command('ak')
@click.option('--k', type=int, required=True)
@format_option
@click.pass_context
def dim_ak(ctx, k, fmt):
    """Dimension k/(k+1) of A_k."""
    value = fractal_dim.ak_dimension(k)
    result = fractal_dim.DimensionResult(value, fractal_dim.CLOSED_FORM, 0.0, EXACT)
    emit(ctx, schemas.DimensionResultSchema().dump(result), EXACT)


@dim.command('level-bound')
@q_option(required=False, default='1/3,1/3,1/3')
@click.option('--theta', type=NUMBER, required=True)
@format_option
@click.pass_context
def dim_level_bound(ctx, system, theta, fmt):
    """Lower bound for the dimension of {x: r(x) = theta}."""
    result = fractal_dim.level_set_lower_bound(system, theta, ctx.obj['GOLDEN_TOLERANCE'])
    emit(ctx, schemas.DimensionResultSchema().dump(result), result.backend)


@cli.group(cls=QsfracGroup)
def opt():
    """Constrained dimension maximization."""


def _optimum_backend(optimum):
    return backend_of(optimum.dim, optimum.tau.tau)


@opt.command('m0')
@format_option
@click.pass_context
def opt_m0(ctx, fmt):
    """M_0 = {r = nu_0}: stationarity cubic against golden-section search."""
    optimum = dim_opt.m0_optimum(ctx.obj['GOLDEN_TOLERANCE'], ctx.obj['AGREEMENT_TOLERANCE'])
    emit(ctx, schemas.OptimumSchema().dump(optimum), _optimum_backend(optimum))


@opt.command('m1')
@format_option
@click.pass_context
def opt_m1(ctx, fmt):
    """M_1 = {r = nu_1}: binary entropy maximum."""
    optimum = dim_opt.m1_optimum(ctx.obj['GOLDEN_TOLERANCE'], ctx.obj['AGREEMENT_TOLERANCE'])
    emit(ctx, schemas.OptimumSchema().dump(optimum), _optimum_backend(optimum))


@opt.command('m2')
@format_option
@click.pass_context
def opt_m2(ctx, fmt):
    """M_2 = {r = nu_2} = E[1, 0, 0]."""
    value = dim_opt.m2_dimension()
    emit(ctx, {'tau': [1, 0, 0], 'dim': float(value), 'exact': schemas.exact_text(value),
               'method': fractal_dim.BE_FORMULA}, backend_of(value))


@opt.command('constrained')
@q_option(required=False, default='1/3,1/3,1/3')
@click.option('--constraint', required=True, help='"c0,c1,c2=b", meaning sum c_i tau_i = b.')
@format_option
@click.pass_context
def opt_constrained(ctx, system, constraint, fmt):
    """Largest BE dimension on a linear constraint (ternary systems)."""
    try:
        parsed = dim_opt.LinearConstraint.parse(constraint)
    except QsfracError as error:
        raise click.BadParameter(str(error), param_hint='--constraint')
    optimum = dim_opt.maximize_be_constrained(system, parsed, ctx.obj['GOLDEN_TOLERANCE'])
    emit(ctx, schemas.OptimumSchema().dump(optimum), _optimum_backend(optimum))


@opt.command('family')
@format_option
@click.pass_context
def opt_family(ctx, fmt):
    """Lower bounds for M_0, M_1, M_2 and their union."""
    bounds = dim_opt.m_family(ctx.obj['GOLDEN_TOLERANCE'])
    dump = schemas.OptimumSchema().dump
    emit(ctx, {'m0': dump(bounds[0]), 'm1': dump(bounds[1]), 'm2': dump(bounds[2]),
               'union': float(bounds['union'])}, FLOAT)


@cli.command()
@click.argument('coeffs', type=NUMBERS, required=False)
@click.option('--coeffs', 'coeffs_option', type=NUMBERS, default=None,
              help='The coefficients as an option; use this (or "--") when a is negative.')
@format_option
@click.pass_context
def cubic(ctx, coeffs, coeffs_option, fmt):
    """
    Real roots of a x^3 + b x^2 + c x + d, given as "a,b,c,d".

    A list starting with a minus sign reads as an option, so pass it as
    --coeffs -1,2,3,4 or after "--".
    """
    if (coeffs is None) == (coeffs_option is None):
        raise click.UsageError('give the coefficients once, as COEFFS or --coeffs')
    coeffs = coeffs if coeffs is not None else coeffs_option
    if len(coeffs) != 4:
        raise click.BadParameter('expected 4 coefficients, got %d' % len(coeffs),
                                 param_hint='COEFFS')
    polynomial = dim_opt.Cubic(*coeffs)
    roots = dim_opt.solve_cubic_real(polynomial)
    result = {'coefficients': list(polynomial.coefficients), 'roots': roots,
              'residuals': [abs(polynomial(r)) for r in roots], 'count': len(roots)}
    emit(ctx, schemas.RootsSchema().dump(result), FLOAT)


@cli.group(cls=QsfracGroup)
def construct():
    """First n digits of a constructed number."""


def _construct(ctx, source, n, max_digits):
    source = _streamed(ctx, source)
    source.max_digits = _cap(ctx, max_digits)
    word = source.prefix(n)
    rows = [['position', 'digit']] + [[i + 1, d] for i, d in enumerate(word)]
    emit(ctx, {'digits': list(word.digits), 's': word.s}, EXACT, rows)


def construct_options(f):
    f = click.option('--n', type=int, required=True, help='Number of digits.')(f)
    f = click.option('--max-digits', type=int, default=None)(f)
    return format_option(f)


@construct.command('oscillating')
@construct_options
@click.option('--c', type=int, default=0)
@click.option('--d', type=int, default=1)
@click.option('--s', type=int, default=2)
@click.pass_context
def construct_oscillating(ctx, n, max_digits, fmt, c, d, s):
    _construct(ctx, special_numbers.oscillating_number(c, d, s), n, max_digits)


@construct.command('ak')
@construct_options
@click.option('--k', type=int, required=True)
@click.option('--s', type=int, default=3)
@click.pass_context
def construct_ak(ctx, n, max_digits, fmt, k, s):
    _construct(ctx, _named(ctx, 'ak', s=s, k=k), n, max_digits)


@construct.command('champernowne')
@construct_options
@click.option('--base', type=int, default=10)
@click.pass_context
def construct_champernowne(ctx, n, max_digits, fmt, base):
    _construct(ctx, special_numbers.champernowne_stream(base), n, max_digits)


@construct.command('copeland-erdos')
@construct_options
@click.pass_context
def construct_copeland_erdos(ctx, n, max_digits, fmt):
    _construct(ctx, special_numbers.copeland_erdos_stream(), n, max_digits)


@construct.command('cyclic')
@construct_options
@click.option('--s', type=int, default=3)
@click.pass_context
def construct_cyclic(ctx, n, max_digits, fmt, s):
    _construct(ctx, special_numbers.cyclic_normal_stream(s), n, max_digits)


@cli.group(cls=QsfracGroup)
def simulate():
    """Seeded Monte Carlo experiments."""


def simulate_options(f):
    f = click.option('--workers', type=int, default=1, show_default=True)(f)
    f = click.option('--seed', type=int, default=None, help='64-bit seed.')(f)
    f = click.option('--trials', type=int, required=True)(f)
    f = click.option('--n', type=int, required=True, help='Digits per sample.')(f)
    f = click.option('--measure', type=NUMBERS, default=None,
                     help='Digit measure (default: the weights q).')(f)
    f = q_option()(f)
    return format_option(f)


def _experiment(ctx, system, measure, n, trials, seed):
    if seed is None:
        seed = ctx.obj['DEFAULT_SEED']
    return monte_carlo.ExperimentConfig(system, n, trials, seed, measure)


@simulate.command('sample')
@q_option()
@click.option('--measure', type=NUMBERS, default=None,
              help='Digit measure (default: the weights q).')
@click.option('--n', type=int, required=True, help='Number of digits.')
@click.option('--trial', type=int, default=0, show_default=True)
@click.option('--seed', type=int, default=None, help='64-bit seed.')
@click.option('--max-digits', type=int, default=None)
@format_option
@click.pass_context
def simulate_sample(ctx, system, measure, n, trial, seed, max_digits, fmt):
    """The digits of one seeded trial."""
    cfg = _experiment(ctx, system, measure, n, trial + 1, seed)
    word = monte_carlo.sample_digit_prefix(cfg, trial, _cap(ctx, max_digits))
    rows = [['position', 'digit']] + [[i + 1, d] for i, d in enumerate(word)]
    emit(ctx, {'digits': list(word.digits), 's': word.s}, EXACT, rows)


@simulate.command('borel')
@simulate_options
@click.pass_context
def simulate_borel(ctx, system, measure, n, trials, seed, workers, fmt):
    """Empirical digit frequencies of Lebesgue-random numbers."""
    report = monte_carlo.borel_experiment(_experiment(ctx, system, measure, n, trials, seed),
                                          workers)
    emit(ctx, schemas.BorelReportSchema().dump(report), FLOAT)


@simulate.command('mean-dist')
@simulate_options
@click.option('--bins', type=int, default=None)
@click.pass_context
def simulate_mean_dist(ctx, system, measure, n, trials, seed, workers, fmt, bins):
    """Histogram of the running mean over trials."""
    report = monte_carlo.mean_distribution_experiment(
        _experiment(ctx, system, measure, n, trials, seed),
        bins or ctx.obj['HISTOGRAM_BINS'], workers)
    rows = [['bin_left', 'count']] + [list(pair) for pair in zip(report.bin_left, report.counts)]
    emit(ctx, schemas.HistogramSchema().dump(report), FLOAT, rows)


@simulate.command('uniformity')
@simulate_options
@click.pass_context
def simulate_uniformity(ctx, system, measure, n, trials, seed, workers, fmt):
    """Kolmogorov-Smirnov check of decoded samples against U[0, 1]."""
    report = monte_carlo.uniformity_experiment(
        _experiment(ctx, system, measure, n, trials, seed), workers)
    emit(ctx, schemas.UniformitySchema().dump(report), FLOAT)


def run(argv=None):
    """
        Runs one command line.

        :param list argv: arguments without the program name
        :returns: the exit status
        :rtype: int
    """
    try:
        cli.main(args=argv, prog_name='qsfrac', standalone_mode=True)
    except SystemExit as exit:
        return exit.code or 0
    return 0
