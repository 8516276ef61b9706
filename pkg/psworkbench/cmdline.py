# Batch front end of the workbench, installed as 'psworkbench'

import argparse
import os
import sys
import unittest

import numpy as np

from . import CONFIG_FILE_DEFAULT, VERSION
from . import hostinfo
from .admissibility import pair_report, prime_factor_bound, pair_prime_factor_bound, search_best_pair, C_LIMIT
from .config import read_config, has_config, create_config, check_config
from .exceptions import (WorkbenchException, InvalidParameterException, PrecisionCapException,
                         MemoryGuardException)
from .exponent_pairs import enumerate_pairs, parse_word, word_to_string, apply_word, pair_from_strings
from .harmonic import vaaler_table, theta_table, e
from .helpers import parse_integer, parse_rational, render_json, render_csv, emit
from .locking import ScriptLock, break_lock
from .sieve import sieve_context, rosser_weights, weight_rows, sieve_summary
from . import expsum_lab
from . import ps_verify

import logging
logger = logging.getLogger('psworkbench')

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PRECISION = 2
EXIT_MEMORY = 3
EXIT_USAGE = 64
EXIT_PARAMETER = 65

QUICK_ENV = 'PSWORKBENCH_QUICK'

# Test module run by --selftest, per subcommand
SELFTESTS = {
    'pairs': 'test_exponent_pairs',
    'admissible': 'test_admissibility',
    'bound': 'test_admissibility',
    'vaaler': 'test_harmonic',
    'theta': 'test_harmonic',
    'sieve': 'test_sieve',
    'vaughan': 'test_expsum_lab',
    'expsum': 'test_expsum_lab',
    'scan': 'test_ps_verify',
    'verify': 'test_ps_verify',
    'gamma0': 'test_ps_verify',
    'configcreate': 'test_config',
    'configtest': 'test_config',
    'unlock': 'test_locking',
}

EXPSUM_KINDS = ('W', 'U', 'U_sup', 'W_z', 'V_z', 'gamma', 'probe', 'scales', 'classify', 'weyl')


class WorkbenchArgumentParser(argparse.ArgumentParser):
    ''' Usage errors leave with EX_USAGE instead of argparse's 2. '''

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{0}: error: {1}\n'.format(self.prog, message))


class Report():
    '''
    Result of a subcommand: JSON data and, where the result is a
    table, the header and rows for CSV output.
    '''

    def __init__(self, data, header=None, rows=None):
        self.data = data
        self.header = header
        self.rows = rows

    def render(self, fmt):
        if fmt == 'json':
            return render_json(self.data)
        if self.rows is None:
            scalars = sorted((key, value) for key, value in self.data.items()
                             if not isinstance(value, (dict, list, tuple)))
            return render_csv(('key', 'value'), scalars)
        return render_csv(self.header, self.rows)


def required(args, name, flag):
    value = getattr(args, name)
    if value is None:
        args.parser.error("{0} is required for '{1}'".format(flag, args.command))
    return value


def pair_argument(args, default=None):
    ''' The exponent pair given by --word, or by --kappa and --lambda. '''
    if args.word is not None:
        word = parse_word(args.word)
        return word, apply_word(word)
    if args.kappa is not None or args.lam is not None:
        return None, pair_from_strings(required(args, 'kappa', '--kappa'), required(args, 'lam', '--lambda'))
    if default is not None:
        word = parse_word(default)
        return word, apply_word(word)
    args.parser.error("give --word or --kappa and --lambda")


def grid(points):
    points = parse_integer(points, 'points')
    if points < 2:
        raise InvalidParameterException('points', points, "need at least two points")
    return np.linspace(0.0, 1.0, points, endpoint=False)


def cmd_pairs(args, config):
    max_len = parse_integer(args.max_len, 'max_len')
    if args.best:
        word, pair, threshold = search_best_pair(max_len, args.workers)
        data = {'word': word, 'word_compact': word_to_string(word, compact=True),
                'kappa': pair.kappa, 'lambda': pair.lam,
                'gamma_threshold': threshold, 'c_threshold': 1 / threshold}
        return Report(data)
    rows = [(word or 'e', pair.kappa, pair.lam) for word, pair in enumerate_pairs(max_len)]
    data = [{'word': word, 'kappa': kappa, 'lambda': lam} for word, kappa, lam in rows]
    return Report(data, ('word', 'kappa', 'lambda'), rows)


def cmd_admissible(args, config):
    word, pair = pair_argument(args)
    gammas = [parse_rational(gamma, 'gamma') for gamma in (args.gamma or [])]
    report = pair_report(word, pair, gammas)
    rows = [(sample['gamma'], sample['delta_max'], sample['q_opt'], sample['prime_factor_bound'])
            for sample in report['delta_formula_samples']]
    return Report(report, ('gamma', 'delta_max', 'q_opt', 'prime_factor_bound'), rows)


def cmd_bound(args, config):
    c = parse_rational(required(args, 'exponent', '--c'), 'c')
    if args.word is not None or args.kappa is not None:
        word, pair = pair_argument(args)
        return Report({'c': c, 'pair': [pair.kappa, pair.lam], 'bound': pair_prime_factor_bound(pair, c)})
    return Report({'c': c, 'c_limit': C_LIMIT, 'bound': prime_factor_bound(c)})


def cmd_vaaler(args, config):
    H = parse_integer(required(args, 'H', '--H'), 'H')
    header = ('x', 'psi', 'approximation', 'majorant')
    rows = vaaler_table(H, grid(args.points))
    return Report({'H': H, 'rows': [dict(zip(header, row)) for row in rows]}, header, rows)


def cmd_theta(args, config):
    Z = parse_integer(required(args, 'Z', '--Z'), 'Z')
    r = parse_integer(args.r, 'r')
    header = ('x', 'theta_0', 'theta_sum')
    rows = theta_table(Z, r, grid(args.points))
    return Report({'Z': Z, 'r': r, 'rows': [dict(zip(header, row)) for row in rows]}, header, rows)


def cmd_sieve(args, config):
    D = parse_integer(required(args, 'D', '--D'), 'D')
    z = None if args.z is None else parse_integer(args.z, 'z')
    ctx = sieve_context(D, z)
    table = rosser_weights(ctx, config.getint('Sieve', 'max_table_entries'))
    s = config.getfloat('Sieve', 'lower_bound_s')
    summary = sieve_summary(ctx, table, s) if ctx.in_sieve_range() else {
        'D': ctx.D, 'z': ctx.z, 's0': ctx.s0, 'entries': len(table)}
    return Report(summary, ('d', 'lambda_plus', 'lambda_minus'), weight_rows(table))


def cmd_vaughan(args, config):
    P = parse_integer(required(args, 'P', '--P'), 'P')
    if args.alpha is not None:
        alpha = float(parse_rational(args.alpha, 'alpha'))

        def f(n):
            return e(alpha * n)
    else:
        rng = np.random.default_rng(parse_integer(args.seed, 'seed'))
        values = rng.standard_normal(P) + 1j * rng.standard_normal(P)

        def f(n):
            return values[n - P - 1]
    return Report(expsum_lab.vaughan_decompose(P, f).as_dict())


def _context(args, config):
    N = parse_integer(required(args, 'N', '--N'), 'N')
    c = parse_rational(required(args, 'exponent', '--c'), 'c')
    P = None if args.P is None else parse_integer(args.P, 'P')
    T = None if args.T is None else float(parse_rational(args.T, 'T'))
    policy = ps_verify.PSConfig.from_config(config, c, 1, 1).policy
    return expsum_lab.expsum_context(N, c, P, parse_integer(args.h, 'h'), parse_integer(args.d, 'd'),
                                     parse_integer(args.j, 'j'), parse_integer(args.freq, 'r'), T, policy)


def cmd_expsum(args, config):
    kind = args.kind
    if kind == 'scales':
        N = parse_integer(required(args, 'N', '--N'), 'N')
        c = parse_rational(required(args, 'exponent', '--c'), 'c')
        return Report(expsum_lab.asymptotic_scales(N, c, parse_integer(args.d, 'd')))
    if kind == 'probe':
        word, pair = pair_argument(args, default='BAABAA')
        lambda1s = [float(parse_rational(value, 'lambda1')) for value in (args.lambda1 or ['1', '10', '100'])]
        rows = expsum_lab.exponent_pair_probe(pair, lambda1s, parse_integer(args.a, 'a'),
                                              float(parse_rational(args.sigma, 'sigma')))
        header = expsum_lab.PROBE_CSV_HEADER
        return Report({'pair': [pair.kappa, pair.lam], 'asserting': False, 'rows': rows},
                      header, [tuple(row[key] for key in header) for row in rows])
    if kind == 'classify':
        N = parse_integer(required(args, 'N', '--N'), 'N')
        c = parse_rational(required(args, 'exponent', '--c'), 'c')
        v = parse_rational(args.h, 'h') / parse_integer(args.d, 'd')
        r = parse_integer(args.freq, 'r')
        alpha1 = float(parse_rational(args.alpha1, 'alpha1'))
        A1 = float(parse_rational(args.A1, 'A1'))
        return Report({'r': r, 'v': v, 'range': expsum_lab.classify_r(r, v, N, 1 / c, alpha1, A1)})
    if kind == 'weyl':
        length = parse_integer(args.length, 'length')
        Q = parse_integer(args.Q, 'Q')
        rng = np.random.default_rng(parse_integer(args.seed, 'seed'))
        lhs, rhs = expsum_lab.weyl_vdc_check(rng.standard_normal(length) + 1j * rng.standard_normal(length), Q)
        return Report({'length': length, 'Q': Q, 'lhs': lhs, 'rhs': rhs, 'holds': lhs <= rhs * (1 + 1e-12)})
    if kind == 'gamma':
        N = parse_integer(required(args, 'N', '--N'), 'N')
        c = parse_rational(required(args, 'exponent', '--c'), 'c')
        D = parse_integer(required(args, 'D', '--D'), 'D')
        z = None if args.z is None else parse_integer(args.z, 'z')
        P = None if args.P is None else parse_integer(args.P, 'P')
        return Report(expsum_lab.gamma_decomposition(N, c, D, z, P).as_dict())

    ctx = _context(args, config)
    if kind == 'W':
        oracle = expsum_lab.eval_W_oracle(ctx) if args.oracle else None
        return Report(expsum_lab.evaluation_report('W', ctx, expsum_lab.eval_W(ctx), oracle))
    if kind == 'U':
        oracle = expsum_lab.eval_U_oracle(ctx) if args.oracle else None
        return Report(expsum_lab.evaluation_report('U', ctx, expsum_lab.eval_U(ctx), oracle))
    if kind == 'U_sup':
        maximum, T = expsum_lab.eval_U_sup(ctx, parse_integer(args.grid, 'grid'), args.workers)
        return Report({'kind': 'U_sup', 'context': ctx.as_dict(), 'max': maximum, 'T': T, 'certified': False})
    Z = parse_integer(required(args, 'Z', '--Z'), 'Z')
    theta_r = parse_integer(args.theta_r, 'theta_r')
    if kind == 'W_z':
        pieces = expsum_lab.eval_W_z(ctx, Z, theta_r)
        rows = [(z, value.real, value.imag) for z, value in enumerate(pieces)]
        data = {'kind': 'W_z', 'context': ctx.as_dict(), 'pieces': pieces,
                'total': sum(pieces), 'W': expsum_lab.eval_W(ctx)}
        return Report(data, ('z', 're', 'im'), rows)
    member = parse_integer(args.member, 'member')
    return Report(expsum_lab.evaluation_report('V_z', ctx, expsum_lab.eval_V_z(ctx, member, Z, theta_r)))


def _scan_config(args, config):
    c = parse_rational(required(args, 'exponent', '--c'), 'c')
    n_lo = parse_integer(required(args, 'N_lo', '--N-lo'), 'N_lo')
    n_hi = parse_integer(required(args, 'N_hi', '--N-hi'), 'N_hi')
    return ps_verify.PSConfig.from_config(config, c, n_lo, n_hi, args.workers, args.witnesses)


def _exclusive(args, config, func):
    if args.exclusive:
        logger.debug("Host: " + repr(hostinfo.all_host_infos()))
        with ScriptLock(config):
            return func()
    return func()


def cmd_scan(args, config):
    cfg = _scan_config(args, config)

    def run():
        records = list(ps_verify.scan(cfg))
        return Report([record.as_dict() for record in records], ps_verify.RepresentationRecord.CSV_HEADER,
                      [record.csv_row() for record in records])
    return _exclusive(args, config, run)


def cmd_verify(args, config):
    cfg = _scan_config(args, config)
    report = _exclusive(args, config, lambda: Report(ps_verify.verify_theorem(cfg)))
    logger.info("{0} values checked, {1} above the bound".format(
        report.data['checked'], report.data['above_bound']))
    return report


def cmd_gamma0(args, config):
    N = parse_integer(required(args, 'N', '--N'), 'N')
    c = parse_rational(required(args, 'exponent', '--c'), 'c')
    D = parse_integer(required(args, 'D', '--D'), 'D')
    z = None if args.z is None else parse_integer(args.z, 'z')
    P = None if args.P is None else parse_integer(args.P, 'P')
    policy = ps_verify.PSConfig.from_config(config, c, 1, 1).policy
    return Report(ps_verify.gamma0_diagnostic(N, c, z, D, P, policy).as_dict())


COMMANDS = {
    'pairs': cmd_pairs,
    'admissible': cmd_admissible,
    'bound': cmd_bound,
    'vaaler': cmd_vaaler,
    'theta': cmd_theta,
    'sieve': cmd_sieve,
    'vaughan': cmd_vaughan,
    'expsum': cmd_expsum,
    'scan': cmd_scan,
    'verify': cmd_verify,
    'gamma0': cmd_gamma0,
}


def selftest(command):
    '''
    Run the test module belonging to a subcommand in quick mode.
    '''
    os.environ[QUICK_ENV] = '1'
    suite = unittest.defaultTestLoader.loadTestsFromName('psworkbench.tests.' + SELFTESTS[command])
    result = unittest.TextTestRunner(stream=sys.stderr, verbosity=1).run(suite)
    return EXIT_OK if result.wasSuccessful() else EXIT_FAILURE


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', default=CONFIG_FILE_DEFAULT, help='Workbench configuration file.')
    common.add_argument('--format', default='json', choices=['json', 'csv'], help='Report format.')
    common.add_argument('--out', default=None, help='Write the report to this file instead of standard output.')
    common.add_argument('--workers', type=int, default=None, help='Worker threads, the default comes from the config file.')
    common.add_argument('--selftest', action='store_true', help='Run the quick test suite of this subcommand and exit.')

    pair_options = argparse.ArgumentParser(add_help=False)
    pair_options.add_argument('--word', default=None, help='Exponent pair as a word applied to (1/2, 1/2), e.g. BA^2BA^2.')
    pair_options.add_argument('--kappa', default=None, help='Explicit pair, first entry.')
    pair_options.add_argument('--lambda', dest='lam', default=None, help='Explicit pair, second entry.')

    parser = WorkbenchArgumentParser(formatter_class=argparse.ArgumentDefaultsHelpFormatter,
                                     description='Piatetski-Shapiro almost-prime workbench.')
    parser.add_argument('--version', action='version', version=VERSION)
    subparsers = parser.add_subparsers(dest='command', help='Supported actions.')

    def add(name, help, parents=()):
        sub = subparsers.add_parser(name, help=help, parents=[common] + list(parents),
                                    formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        sub.set_defaults(parser=sub)
        return sub

    sub = add('pairs', 'Enumerate exponent pairs reachable from (1/2, 1/2).')
    sub.add_argument('--max-len', dest='max_len', default='6', help='Longest word.')
    sub.add_argument('--best', action='store_true', help='Report only the pair with the lowest gamma threshold.')

    sub = add('admissible', 'Admissible region and threshold of one exponent pair.', [pair_options])
    sub.add_argument('--gamma', action='append', help='Sample gamma, may be repeated.')

    sub = add('bound', 'Number of prime factors of the almost prime for an exponent c.', [pair_options])
    sub.add_argument('--c', dest='exponent', default=None, help='Exponent c.')

    sub = add('vaaler', 'Sawtooth, trigonometric approximation and majorant on a grid.')
    sub.add_argument('--H', default=None, help='Approximation length.')
    sub.add_argument('--points', default='101', help='Grid points in [0, 1).')

    sub = add('theta', 'First member and sum of the smooth cut-off family on a grid.')
    sub.add_argument('--Z', default=None, help='Family size parameter, 2Z members.')
    sub.add_argument('--r', default='8', help='Smoothness order.')
    sub.add_argument('--points', default='101', help='Grid points in [0, 1).')

    sub = add('sieve', 'Rosser weights and sieve sums of level D.')
    sub.add_argument('--D', default=None, help='Sieve level.')
    sub.add_argument('--z', default=None, help='Sifting cutoff, default ceil(D^(2/5)).')

    sub = add('vaughan', 'Vaughan dissection of a von Mangoldt weighted sum over (P, 2P].')
    sub.add_argument('--P', default=None, help='Scale.')
    sub.add_argument('--seed', default='0', help='Seed of the random test function.')
    sub.add_argument('--alpha', default=None, help='Use f(n) = e(alpha n) instead of a random function.')

    sub = add('expsum', 'Evaluate one of the exponential sums or probes.', [pair_options])
    sub.add_argument('kind', choices=EXPSUM_KINDS, help='What to evaluate.')
    for flag, default, text in (('--N', None, 'Target N.'), ('--c', None, 'Exponent c.'),
                                ('--P', None, 'Prime scale, default largest usable.'),
                                ('--h', '1', 'Numerator of v.'), ('--d', '1', 'Denominator of v.'),
                                ('--j', '0', 'Shift j, 0 or 1.'), ('--r', '0', 'Frequency r.'),
                                ('--T', None, 'T in [N, N+2], default N + j.'),
                                ('--Z', None, 'Smooth family size.'), ('--theta-r', '8', 'Smoothness order.'),
                                ('--member', '0', 'Member z of the smooth family.'),
                                ('--D', None, 'Sieve level.'), ('--z', None, 'Sifting cutoff.'),
                                ('--grid', '64', 'T grid points for U_sup.'),
                                ('--a', '10000', 'Probe range start.'), ('--sigma', '3/2', 'Probe exponent.'),
                                ('--alpha1', '1/10', 'Lower range constant.'), ('--A1', '10', 'Upper range constant.'),
                                ('--length', '100', 'Sequence length.'), ('--Q', '10', 'Weyl shift range.'),
                                ('--seed', '0', 'Random seed.')):
        dest = {'--c': 'exponent', '--r': 'freq', '--theta-r': 'theta_r'}.get(flag, flag.lstrip('-'))
        sub.add_argument(flag, dest=dest, default=default, help=text)
    sub.add_argument('--lambda1', action='append', help='Probe lambda1, may be repeated.')
    sub.add_argument('--oracle', action='store_true', help='Add the 50 digit evaluation.')

    for name, text in (('scan', 'Representations of every N in a range.'),
                       ('verify', 'Check the almost-prime bound over a range.')):
        sub = add(name, text)
        sub.add_argument('--c', dest='exponent', default=None, help='Exponent c.')
        sub.add_argument('--N-lo', dest='N_lo', default=None, help='First N.')
        sub.add_argument('--N-hi', dest='N_hi', default=None, help='Last N.')
        sub.add_argument('--witnesses', default=None, choices=['first', 'all'], help='Witnesses per N.')
        sub.add_argument('--exclusive', action='store_true', help='Hold the scan lock while running.')

    sub = add('gamma0', 'Main term of the sieved representation count.')
    sub.add_argument('--N', default=None, help='Target N.')
    sub.add_argument('--c', dest='exponent', default=None, help='Exponent c.')
    sub.add_argument('--D', default=None, help='Sieve level.')
    sub.add_argument('--z', default=None, help='Sifting cutoff.')
    sub.add_argument('--P', default=None, help='Prime scale, default largest usable.')

    add('configcreate', 'Create an initial config file.')
    add('configtest', 'Check the config file and show host information.')
    add('unlock', 'Break the scan lock of a crashed run.')
    return parser


def run_command(args):
    if args.command == 'configcreate':
        print("Creating config file at " + args.config)
        return EXIT_OK if create_config(args.config) else EXIT_FAILURE

    if args.command == 'configtest':
        print("Testing config file at " + args.config)
        if not has_config(args.config):
            print("ERROR: Seems like the config file {0} does not exist. Call 'psworkbench configcreate' first.".format(
                args.config))
            return EXIT_FAILURE
        config = read_config(args.config)
        if not check_config(config):
            return EXIT_FAILURE
        for key, value in hostinfo.all_host_infos():
            print("{0}: {1}".format(key, value))
        return EXIT_OK

    config = read_config(args.config)
    if args.command == 'unlock':
        break_lock(config)
        return EXIT_OK

    if args.workers is None:
        args.workers = config.getint('Scan', 'workers')
    report = COMMANDS[args.command](args, config)
    emit(report.render(args.format), args.out)
    return EXIT_OK


def console_script(argv=None):
    '''
        The main entry point for the command-line tool 'psworkbench',
        installed by setuptools. Returns the exit code.
    '''
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] == 'help':
        parser.print_help()
        return EXIT_OK
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    if args.selftest:
        return selftest(args.command)

    try:
        return run_command(args)
    except SystemExit as e:
        return e.code
    except InvalidParameterException as e:
        logger.error(e.info)
        return EXIT_PARAMETER
    except PrecisionCapException as e:
        logger.error(e.info)
        return EXIT_PRECISION
    except MemoryGuardException as e:
        logger.error(e.info)
        return EXIT_MEMORY
    except WorkbenchException as e:
        logger.error(e.info)
        return EXIT_FAILURE


if __name__ == "__main__":
    exit(console_script())
