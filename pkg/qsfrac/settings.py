"""
    Settings
    ~~~~~~~~

    Package defaults. Every UPPER_CASE name here can be overridden by a
    ``config.py`` next to the data you work on, or by the file named in
    ``QSFRAC_SETTINGS``.
"""
import logging
import os

from flask import Config

MAX_DIGITS = 2 ** 22
GOLDEN_TOLERANCE = 1e-10
MORAN_TOLERANCE = 1e-13
AGREEMENT_TOLERANCE = 1e-6
DEFAULT_SEED = 20111209
FREE_DIGIT_SEED = 7
HISTOGRAM_BINS = 20
STREAM_CHUNK = 65536
LOG_LEVEL = 'WARNING'

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def load_config(directory=None, silent=True):
    """
        Builds the configuration: package defaults, then
        ``<directory>/config.py``, then ``$QSFRAC_SETTINGS``.

        :param str directory: where to look for ``config.py``, defaults
            to the current working directory.
        :param bool silent: when False a missing ``config.py`` raises
            :class:`IOError`.

        :returns: the merged configuration
        :rtype: flask.Config
    """
    if directory is None:
        directory = os.getcwd()
    config = Config(directory)
    config.from_object('qsfrac.settings')
    config.from_pyfile(os.path.join(directory, 'config.py'), silent=silent)
    config.from_envvar('QSFRAC_SETTINGS', silent=True)
    return config


def configure_logging(level=LOG_LEVEL):
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger('qsfrac').setLevel(level)
