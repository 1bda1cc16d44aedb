# encoding: utf-8

MAX_DIGITS = 4096
LOG_LEVEL = 'ERROR'
DEFAULT_SEED = 12345
