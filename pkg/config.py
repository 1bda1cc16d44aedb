# encoding: utf-8

MAX_DIGITS = 2 ** 22
GOLDEN_TOLERANCE = 1e-10
MORAN_TOLERANCE = 1e-13
AGREEMENT_TOLERANCE = 1e-6
DEFAULT_SEED = 20111209
FREE_DIGIT_SEED = 7
HISTOGRAM_BINS = 20
LOG_LEVEL = 'WARNING'
