import os
import logging

# Root directory of the test data, for finding the test files
rootdir = os.path.dirname(__file__) + os.sep

# Override for log output during test run
log_level = logging.ERROR

# Set by 'psworkbench <command> --selftest', skips the slow acceptance runs
quick = os.environ.get('PSWORKBENCH_QUICK', '0') == '1'
