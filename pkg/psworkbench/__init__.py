'''
    Piatetski-Shapiro almost-prime workbench.

    This library has two parts: the exact exponent-pair calculus that
    produces the admissible range of the exponent c together with the
    almost-prime bound, and the numerical laboratory for the analytic
    gadgets (Vaaler approximation, smoothing functions, Rosser weights,
    Vaughan decomposition) plus a desk-scale scanner for the equation
    [p^c] + [m^c] = N.

    The command-line front end is installed as:
       psworkbench <subcommand> [options]

    Check 'psworkbench help' for the list of subcommands.
'''

# The default location of the config file for the workbench
CONFIG_FILE_DEFAULT = '/etc/psworkbench/workbench.ini'

VERSION = '0.3.0'
