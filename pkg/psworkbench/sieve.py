'''
    Rosser weights of the linear sieve, the sieve functions F and f on
    [2, 3] and the sums the lower and upper bound sieve are built from.

    Only odd primes take part: the sifting range is 2 < p < z.
'''

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arithmetic import primes_up_to, mobius_table, guard_table
from .exceptions import InvalidParameterException, MemoryGuardException

import logging
logger = logging.getLogger('psworkbench')

EXP_EULER = math.exp(np.euler_gamma)
DEFAULT_MAX_ENTRIES = 10 ** 8
DEFAULT_LOWER_BOUND_S = 2.1


def default_cutoff(D):
    ''' Smallest integer z with z^5 >= D^2, that is z = ceil(D^(2/5)). '''
    z = max(1, int(round(D ** 0.4)) - 1)
    while z ** 5 < D ** 2:
        z += 1
    return z


@dataclass(frozen=True)
class SieveContext():
    D: int
    z: int
    primes: tuple = field(repr=False)

    @property
    def s0(self):
        return math.log(self.D) / math.log(self.z)

    def in_sieve_range(self):
        ''' z^2 <= D <= z^3 '''
        return self.z ** 2 <= self.D <= self.z ** 3


def sieve_context(D, z=None):
    if z is None:
        z = default_cutoff(D)
    D, z = int(D), int(z)
    if D < 5:
        raise InvalidParameterException('D', D, "level must be at least 5")
    if not 3 <= z <= D:
        raise InvalidParameterException('z', z, "cutoff must lie in [3, D]")
    primes = tuple(int(p) for p in primes_up_to(z - 1) if p > 2)
    return SieveContext(D, z, primes)


class WeightTable():
    '''
    Upper and lower Rosser weights, stored for the d where one of them
    does not vanish. All other d have weight zero.
    '''

    def __init__(self, ctx, weights):
        self.ctx = ctx
        self.weights = weights

    def __len__(self):
        return len(self.weights)

    def plus(self, d):
        return self.weights.get(d, (0, 0))[0]

    def minus(self, d):
        return self.weights.get(d, (0, 0))[1]

    def items(self):
        return sorted(self.weights.items())


def rosser_weights(ctx, max_entries=DEFAULT_MAX_ENTRIES):
    '''
    For d = p1 p2 ... pr with p1 > p2 > ... > pr the upper weight is
    mu(d) if p1...p(m-1) pm^3 < D at every odd position m, the lower
    weight mu(d) if the same holds at every even position m, else 0.
    '''
    primes = list(ctx.primes)
    D = ctx.D
    weights = {1: (1, 1)}
    # prefix d, number of primes, index bound for the next (smaller) prime, flags
    stack = [(1, 0, len(primes), True, True)]
    while stack:
        d, r, bound, plus_ok, minus_ok = stack.pop()
        # next prime p must satisfy d * p < D
        limit = min(bound, bisect.bisect_left(primes, (D + d - 1) // d))
        position = r + 1
        sign = -1 if position % 2 else 1
        for j in range(limit):
            p = primes[j]
            condition = d * p ** 3 < D
            next_plus = plus_ok and (condition or position % 2 == 0)
            next_minus = minus_ok and (condition or position % 2 == 1)
            if not (next_plus or next_minus):
                continue
            dp = d * p
            weights[dp] = (sign if next_plus else 0, sign if next_minus else 0)
            if len(weights) > max_entries:
                raise MemoryGuardException(len(weights), max_entries, "Rosser weight table")
            stack.append((dp, position, j, next_plus, next_minus))
    logger.debug("Rosser weights for D={0}, z={1}: {2} entries".format(D, ctx.z, len(weights)))
    return WeightTable(ctx, weights)


def kernel_primes(n, ctx):
    return [p for p in ctx.primes if n % p == 0]


def kernel_divisors(ctx, limit):
    ''' Divisors d <= limit of the product of the sifting primes. '''
    primes = ctx.primes
    stack = [(1, 0)]
    while stack:
        d, start = stack.pop()
        yield d
        for j in range(start, len(primes)):
            if d * primes[j] > limit:
                break
            stack.append((d * primes[j], j + 1))


def sandwich_check(n, table):
    '''
    Divisor sums of lower weights, Moebius function and upper weights
    over the divisors of n built from sifting primes.
    '''
    if n < 1:
        raise InvalidParameterException('n', n, "must be positive")
    factors = kernel_primes(n, table.ctx)
    lo = mid = hi = 0
    divisors = [(1, 1)]
    for p in factors:
        divisors += [(d * p, -mu) for d, mu in divisors]
    for d, mu in divisors:
        lo += table.minus(d)
        mid += mu
        hi += table.plus(d)
    return lo, mid, hi


def sandwich_range(limit, table, budget=DEFAULT_MAX_ENTRIES):
    '''
    sandwich_check for every n <= limit at once, as arrays indexed by n.
    '''
    guard_table(4 * (limit + 1), budget)
    lo = np.zeros(limit + 1, dtype=np.int64)
    hi = np.zeros(limit + 1, dtype=np.int64)
    for d, (plus, minus) in table.weights.items():
        if d <= limit:
            if plus:
                hi[d::d] += plus
            if minus:
                lo[d::d] += minus
    mu = mobius_table(limit)
    mid = np.zeros(limit + 1, dtype=np.int64)
    for d in kernel_divisors(table.ctx, limit):
        mid[d::d] += mu[d]
    lo[0] = mid[0] = hi[0] = 0
    return lo, mid, hi


def _check_s(s):
    if not 2 <= s <= 3:
        raise InvalidParameterException('s', s, "sieve functions are given on [2, 3] only")


def linear_sieve_F(s):
    _check_s(s)
    return 2 * EXP_EULER / s


def linear_sieve_f(s):
    _check_s(s)
    return 2 * EXP_EULER / s * math.log(s - 1)


@dataclass(frozen=True)
class SieveSums():
    B: Fraction
    N_plus: Fraction
    N_minus: Fraction
    ratio_upper: float = None
    ratio_lower: float = None

    def holds(self):
        return self.N_minus <= self.B <= self.N_plus


def sieve_sums(ctx, table=None, max_entries=DEFAULT_MAX_ENTRIES):
    '''
    The Mertens product B over 2 < p < z and the sums N+ and N- of
    lambda(d)/d, all exact. The ratios against F(s0) and f(s0) are
    diagnostics only.
    '''
    if not ctx.in_sieve_range():
        raise InvalidParameterException('D', ctx.D, "need z^2 <= D <= z^3 (z = {0})".format(ctx.z))
    if table is None:
        table = rosser_weights(ctx, max_entries)
    B = Fraction(1)
    for p in ctx.primes:
        B *= Fraction(p - 1, p)
    N_plus = sum((Fraction(plus, d) for d, (plus, _) in table.weights.items() if plus), Fraction(0))
    N_minus = sum((Fraction(minus, d) for d, (_, minus) in table.weights.items() if minus), Fraction(0))
    ratio_upper = ratio_lower = None
    s0 = ctx.s0
    if 2 <= s0 <= 3:
        ratio_upper = float(N_plus) / (float(B) * linear_sieve_F(s0))
        if s0 > 2:
            ratio_lower = float(N_minus) / (float(B) * linear_sieve_f(s0))
    return SieveSums(B, N_plus, N_minus, ratio_upper, ratio_lower)


def lower_bound_factor(delta=None, s=DEFAULT_LOWER_BOUND_S, epsilon=None):
    '''
    f(s) for the lower bound sieve. With epsilon, s = delta/(delta/2 - epsilon).
    '''
    if delta is not None:
        delta = Fraction(delta)
        if delta <= 0:
            raise InvalidParameterException('delta', delta, "must be positive")
    if epsilon is not None:
        if delta is None:
            raise InvalidParameterException('delta', delta, "needed together with epsilon")
        epsilon = Fraction(epsilon)
        if not 0 < epsilon < delta / 2:
            raise InvalidParameterException('epsilon', epsilon, "must lie in (0, delta/2)")
        s = float(delta / (delta / 2 - epsilon))
    if not 2 < s <= 3:
        raise InvalidParameterException('s', s, "must lie in (2, 3]")
    return linear_sieve_f(s)


def weight_rows(table):
    return [(d, plus, minus) for d, (plus, minus) in table.items()]


def sieve_summary(ctx, table=None, lower_bound_s=DEFAULT_LOWER_BOUND_S):
    if table is None:
        table = rosser_weights(ctx)
    sums = sieve_sums(ctx, table)
    f_s = lower_bound_factor(s=lower_bound_s)
    return {
        'D': ctx.D,
        'z': ctx.z,
        's0': ctx.s0,
        'entries': len(table),
        'B': float(sums.B),
        'N_plus': float(sums.N_plus),
        'N_minus': float(sums.N_minus),
        'ratio_upper': sums.ratio_upper,
        'ratio_lower': sums.ratio_lower,
        'lower_bound_s': lower_bound_s,
        'f_lower_bound': f_s,
        'B_times_f': float(sums.B) * f_s,
        'sandwich_holds': sums.holds(),
    }
