"""
    qsfrac
    ~~~~~~

    Q_s-representations of real numbers, their digit statistics and the
    fractal dimension of digit-defined sets.
"""
from qsfrac.digit_stats import RunningStats
from qsfrac.digit_stats import accumulate
from qsfrac.digit_stats import oscillation_report
from qsfrac.digit_stats import running_mean_series
from qsfrac.errors import DomainError
from qsfrac.errors import QsfracError
from qsfrac.fractal_dim import FrequencyVector
from qsfrac.fractal_dim import ak_dimension
from qsfrac.fractal_dim import be_dimension
from qsfrac.fractal_dim import level_set_lower_bound
from qsfrac.fractal_dim import moran_dimension
from qsfrac.qs_system import DigitWord
from qsfrac.qs_system import PeriodicDigits
from qsfrac.qs_system import QsSystem
from qsfrac.qs_system import cylinder
from qsfrac.qs_system import decode_periodic
from qsfrac.qs_system import decode_word
from qsfrac.qs_system import encode
from qsfrac.qs_system import new_system

__all__ = [
    'DigitWord', 'DomainError', 'FrequencyVector', 'PeriodicDigits', 'QsSystem',
    'QsfracError', 'RunningStats', 'accumulate', 'ak_dimension', 'be_dimension',
    'cylinder', 'decode_periodic', 'decode_word', 'encode', 'level_set_lower_bound',
    'moran_dimension', 'new_system', 'oscillation_report', 'running_mean_series',
]
