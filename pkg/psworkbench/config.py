'''
    Common functions dealing with the library configuration.
'''

import os
from configparser import ConfigParser, RawConfigParser

from . import CONFIG_FILE_DEFAULT

import logging
logger = logging.getLogger('psworkbench')

# Environment variable overriding the precision cap of certified floors
PRECISION_CAP_ENV = 'PSWORKBENCH_PRECISION_CAP'

WITNESS_MODES = ('first', 'all')


DEFAULT_SETTINGS = {
    'Precision': {
        'base_digits': '30',                     # First precision for interval escalation
        'max_digits': '480',                     # Precision cap, never exceeded
        'boundary_tolerance': '1e-12',           # Relative distance to an integer that forces escalation
        'exact_fallback': 'True'                 # Integer-root check for rational c at the cap
    },
    'Scan': {
        'segment_size': '65536',                 # Values of N per work unit
        'workers': '1',                          # Threads for segments and pair searches
        'witnesses': 'first',                    # 'first' or 'all' witnesses per N
        'max_n': '100000000',                    # Desk-scale guard for N
        'table_budget': '100000000'              # Largest value table, in entries
    },
    'Sieve': {
        'max_table_entries': '100000000',        # Guard for Rosser weight tables
        'lower_bound_s': '2.1'                   # s used for f(s) in the lower bound factor
    },
    'Execution': {
        'pidfile': '/tmp/psworkbench.lock',      # Lock file for exclusive scans
        'timeout': '3600'                        # Age in seconds after which a lock counts as stale
    },
    'Logging': {
        'format': '%%(asctime)-15s (%%(process)d): %%(message)s',
        'file': '/tmp/psworkbench.log',
        'to_file': 'False',
        'level': 'INFO'
    }
}

DEFAULT_SETTINGS_FLAT = {}
for outer_key, inner_dict in DEFAULT_SETTINGS.items():
    for key, value in inner_dict.items():
        DEFAULT_SETTINGS_FLAT[key] = value

DEFAULT_FILE_CONTENT = '''
[Precision]

# Decimal digits of the first interval evaluation when double precision
# cannot decide a floor [n^c]. The precision doubles until max_digits.
base_digits={base_digits}

# Precision cap. Hitting it is reported, never silently rounded.
# Can be overridden with the PSWORKBENCH_PRECISION_CAP environment variable.
max_digits={max_digits}

# Relative distance of n^c to an integer below which the fast path
# hands over to interval arithmetic
boundary_tolerance={boundary_tolerance}

# For rational c = a/b, decide [n^c] by an exact integer b-th root
# once the precision cap is reached
exact_fallback={exact_fallback}

[Scan]

# Number of consecutive N values per work unit
segment_size={segment_size}

# Worker threads for scans and exponent pair searches.
# Output does not depend on this value.
workers={workers}

# Witnesses kept per N, 'first' or 'all'
witnesses={witnesses}

# Largest N accepted by the scanner
max_n={max_n}

# Largest value table (entries) the scanner may allocate
table_budget={table_budget}

[Sieve]

# Largest Rosser weight table (entries)
max_table_entries={max_table_entries}

# Argument s of the lower sieve function f(s), 2 < s <= 3
lower_bound_s={lower_bound_s}

[Execution]

# Long scans can demand to run alone on the machine.
# In this case, the following lock file is used.
pidfile={pidfile}

# Locks older than this number of seconds are reported as stale
timeout={timeout}

[Logging]

# Logging format, as described in the Python logging module documentation
format={format}

# Target file for logging information
# only needed if to_file=True
file={file}

# If false, logging goes to console
to_file={to_file}

# Log level, as described in the Python logging module documentation
level={level}
'''


def read_config(config_file=CONFIG_FILE_DEFAULT, override_cap=None):
    ''' Read configuration file, perform sanity check and return configuration
        dictionary used by other functions.'''
    config = ConfigParser()
    config.read_dict(DEFAULT_SETTINGS)

    try:
        with open(config_file) as f:
            config.read_file(f)
        logger.debug("Using config file at " + config_file)
    except (OSError, TypeError):
        logger.debug(
            "Could not find {0}, running with defaults.".format(config_file))

    if not logger.handlers:
        # Handlers might be already registered in repeated test suite runs
        if config.getboolean("Logging", "to_file"):
            handler = logging.FileHandler(config.get("Logging", "file"))
        else:
            handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(
            config.get("Logging", "format")))
        logger.addHandler(handler)
    logger.setLevel(config.get("Logging", "level"))

    env_cap = os.environ.get(PRECISION_CAP_ENV)
    if env_cap:
        logger.debug("Precision cap taken from {0}: {1}".format(PRECISION_CAP_ENV, env_cap))
        config['Precision']['max_digits'] = env_cap
    if override_cap:
        config['Precision']['max_digits'] = str(override_cap)

    return config


def check_config(config):
    '''
        Check the workbench config file for consistency.
    '''
    try:
        base = config.getint("Precision", "base_digits")
        cap = config.getint("Precision", "max_digits")
        tolerance = config.getfloat("Precision", "boundary_tolerance")
        segment = config.getint("Scan", "segment_size")
        workers = config.getint("Scan", "workers")
        s = config.getfloat("Sieve", "lower_bound_s")
    except ValueError as e:
        logger.error("Malformed numeric setting: {0}".format(e))
        return False
    if not 0 < base <= cap:
        logger.error(
            "The precision cap ({0}) must not be below base_digits ({1}).".format(cap, base))
        return False
    if not 0 < tolerance < 1:
        logger.error("boundary_tolerance must lie in (0, 1), got {0}.".format(tolerance))
        return False
    if segment < 1 or workers < 1:
        logger.error("segment_size and workers must be positive.")
        return False
    if config.get("Scan", "witnesses") not in WITNESS_MODES:
        logger.error("Witness mode must be one of {0}.".format(', '.join(WITNESS_MODES)))
        return False
    if not 2 < s <= 3:
        logger.error("lower_bound_s must lie in (2, 3], got {0}.".format(s))
        return False
    return True


def has_config(config_fname):
    '''
    Determine if the given config file exists.
    '''
    config = RawConfigParser()
    try:
        with open(config_fname) as f:
            config.read_file(f)
        return True
    except IOError:
        return False


def create_config(config_fname):
    '''
    Create the config file from the defaults under the given name.
    '''
    config_path = os.path.dirname(config_fname)
    if config_path:
        os.makedirs(config_path, exist_ok=True)

    with open(config_fname, 'wt') as config:
        config.write(DEFAULT_FILE_CONTENT.format(**DEFAULT_SETTINGS_FLAT))
    return True


def precision_policy(config):
    '''
    Extract the precision settings used by the certified floor functions.
    '''
    return {
        'base_digits': config.getint("Precision", "base_digits"),
        'max_digits': config.getint("Precision", "max_digits"),
        'tolerance': config.getfloat("Precision", "boundary_tolerance"),
        'exact_fallback': config.getboolean("Precision", "exact_fallback"),
    }
