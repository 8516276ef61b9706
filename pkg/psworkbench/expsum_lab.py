'''
    Numerical laboratory for the exponential sums behind the
    representation count: the Vaughan dissection, direct and
    high precision evaluation of W(v) and U(T, r, v), the sieve
    weighted counts Gamma and Sigma_j, the Weyl - van der Corput
    inequality and exponent pair probes.

    Everything here is diagnostic. The asymptotic scales where the
    estimates bite are far out of reach, so the functions take the
    scales as parameters and work at desk size.
'''

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import gmpy2
import numpy as np
from mpmath.ctx_mp import MPContext

from .arithmetic import mobius_table, von_mangoldt_table, prime_mask, primes_in_range, primes_up_to
from .exceptions import InvalidParameterException, DomainViolationException
from .exponent_pairs import vdc_bound
from .harmonic import e, psi, theta_family
from .ps_verify import (DEFAULT_POLICY, check_exponent, floor_pow_table, preimage_interval,
                        representations, usable_prime_scale, main_term_sum, PSConfig)
from .sieve import sieve_context, rosser_weights, sandwich_check

import logging
logger = logging.getLogger('psworkbench')

ORACLE_DIGITS = 50
SUP_GRID = 64


def _fsum_complex(values):
    ''' Order independent, correctly rounded sum of a complex array. '''
    values = np.asarray(values, dtype=np.complex128)
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


@dataclass(frozen=True)
class ExpSumContext():
    '''
    Parameters of one evaluation. The frequency is v = h/d, the prime
    range is P < p <= 2P and T defaults to N + j.
    '''
    N: int
    c: Fraction
    P: int
    h: int = 1
    d: int = 1
    j: int = 0
    r: int = 0
    T: float = None
    policy: dict = field(default_factory=lambda: dict(DEFAULT_POLICY), repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'c', check_exponent(self.c))
        if self.j not in (0, 1):
            raise InvalidParameterException('j', self.j, "must be 0 or 1")
        if self.d < 1 or self.h < 0:
            raise InvalidParameterException('v', (self.h, self.d), "need h >= 0 and d >= 1")
        if self.P < 1:
            raise InvalidParameterException('P', self.P, "must be positive")
        if self.T is None:
            object.__setattr__(self, 'T', float(self.N + self.j))
        if not self.N <= self.T <= self.N + 2:
            raise InvalidParameterException('T', self.T, "must lie in [N, N + 2]")

    @property
    def gamma(self):
        return 1 / self.c

    @property
    def v(self):
        return Fraction(self.h, self.d)

    def as_dict(self):
        return {'N': self.N, 'c': self.c, 'P': self.P, 'v': self.v,
                'j': self.j, 'r': self.r, 'T': self.T}


def expsum_context(N, c, P=None, h=1, d=1, j=0, r=0, T=None, policy=DEFAULT_POLICY):
    '''
    Build an ExpSumContext, with P defaulting to the largest usable scale.
    '''
    if P is None:
        P = usable_prime_scale(N, c, policy)
    return ExpSumContext(int(N), c, int(P), int(h), int(d), int(j), int(r), T, dict(policy))


def _prime_floors(ctx):
    primes = primes_in_range(ctx.P, 2 * ctx.P)
    if not primes.size:
        return primes, primes.copy()
    floors = floor_pow_table(int(primes[-1]), ctx.c, ctx.policy)[primes]
    return primes, floors


def _floored_base(ctx, floors, shift=0.0):
    base = (ctx.N + ctx.j - floors) + shift
    if (base <= 0).any():
        raise DomainViolationException('P', ctx.P, "N + j - [p^c] <= 0 for some P < p <= 2P")
    return base.astype(np.float64)


def _powers(primes, c):
    return np.exp(float(c) * np.log(primes.astype(np.float64)))


def eval_W(ctx):
    '''
    W(v), the sum of log p e(v (N + j - [p^c])^gamma) over P < p <= 2P.
    '''
    primes, floors = _prime_floors(ctx)
    if not primes.size:
        return 0j
    base = _floored_base(ctx, floors)
    phases = float(ctx.v) * base ** float(ctx.gamma)
    return _fsum_complex(np.log(primes) * e(phases))


def _oracle_context(digits):
    mp = MPContext()
    mp.dps = digits
    return mp


def eval_W_oracle(ctx, digits=ORACLE_DIGITS):
    ''' W(v) summed term by term in mpmath at the given precision. '''
    mp = _oracle_context(digits)
    gamma = mp.mpf(ctx.c.denominator) / ctx.c.numerator
    v = mp.mpf(ctx.h) / ctx.d
    primes, floors = _prime_floors(ctx)
    total = mp.mpc(0)
    for p, k in zip(primes.tolist(), floors.tolist()):
        base = ctx.N + ctx.j - k
        if base <= 0:
            raise DomainViolationException('P', ctx.P, "N + j - [p^c] <= 0 for p = {0}".format(p))
        phase = mp.frac(v * mp.power(base, gamma))
        total += mp.log(p) * mp.expjpi(2 * phase)
    return complex(total)


def eval_U(ctx):
    '''
    U(T, r, v), the sum of log p e(r p^c + v (T - p^c)^gamma) over P < p <= 2P.
    '''
    primes = primes_in_range(ctx.P, 2 * ctx.P)
    if not primes.size:
        return 0j
    powers = _powers(primes, ctx.c)
    rest = ctx.T - powers
    if (rest <= 0).any():
        raise DomainViolationException('P', ctx.P, "T - p^c <= 0 for some P < p <= 2P")
    phases = np.mod(ctx.r * np.mod(powers, 1.0), 1.0) + float(ctx.v) * rest ** float(ctx.gamma)
    return _fsum_complex(np.log(primes) * e(phases))


def eval_U_oracle(ctx, digits=ORACLE_DIGITS):
    mp = _oracle_context(digits)
    c = mp.mpf(ctx.c.numerator) / ctx.c.denominator
    gamma = mp.mpf(ctx.c.denominator) / ctx.c.numerator
    v = mp.mpf(ctx.h) / ctx.d
    T = mp.mpf(ctx.T)
    total = mp.mpc(0)
    for p in primes_in_range(ctx.P, 2 * ctx.P).tolist():
        power = mp.power(p, c)
        if T - power <= 0:
            raise DomainViolationException('P', ctx.P, "T - p^c <= 0 for p = {0}".format(p))
        phase = mp.frac(ctx.r * power + v * mp.power(T - power, gamma))
        total += mp.log(p) * mp.expjpi(2 * phase)
    return complex(total)


def eval_U_sup(ctx, grid=SUP_GRID, workers=1):
    '''
    Largest |U(T, r, v)| over an equally spaced grid of T in [N, N + 2].
    This samples the supremum, it does not certify it.

    Returns:
        (maximum, T where it is attained)
    '''
    if grid < 2:
        raise InvalidParameterException('grid', grid, "need at least two grid points")
    Ts = np.linspace(ctx.N, ctx.N + 2, grid).tolist()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        values = list(pool.map(lambda T: abs(eval_U(replace(ctx, T=T))), Ts))
    best = int(np.argmax(values))
    return values[best], Ts[best]


def eval_W_z(ctx, Z, r):
    '''
    The pieces W_z(v) of W(v) cut out by the smooth family theta_z
    applied to p^c, for z = 0 .. 2Z-1. They add up to W(v).
    '''
    family = theta_family(Z, r)
    primes, floors = _prime_floors(ctx)
    if not primes.size:
        return [0j] * (2 * Z)
    base = _floored_base(ctx, floors)
    terms = np.log(primes) * e(float(ctx.v) * base ** float(ctx.gamma))
    weights = family.members(_powers(primes, ctx.c))
    return [_fsum_complex(weights[z] * terms) for z in range(2 * Z)]


def eval_V_z(ctx, z, Z, r):
    '''
    V_z(v), the sum of log p theta_z(p^c) e(v (N + j - [p^c] + z/(2Z))^gamma).
    '''
    if not 0 <= z < 2 * Z:
        raise InvalidParameterException('z', z, "must lie in [0, 2Z)")
    family = theta_family(Z, r)
    primes, floors = _prime_floors(ctx)
    if not primes.size:
        return 0j
    base = _floored_base(ctx, floors, z / (2 * Z))
    weights = family.member(z, _powers(primes, ctx.c))
    return _fsum_complex(weights * np.log(primes) * e(float(ctx.v) * base ** float(ctx.gamma)))


def eval_V_z_expanded(ctx, z, Z, r, M):
    '''
    The Fourier side of V_z: the sum of g_z(m) U(N + j + z/(2Z), m, v)
    over |m| <= M. With [p^c] replaced by p^c - z/(2Z) it tends to V_z
    as M grows.
    '''
    family = theta_family(Z, r)
    shifted = replace(ctx, T=ctx.N + ctx.j + z / (2 * Z))
    ms = np.arange(-M, M + 1)
    coefficients = family.g(z, ms)
    values = np.array([eval_U(replace(shifted, r=int(m))) for m in ms.tolist()])
    return _fsum_complex(coefficients * values)


@dataclass(frozen=True, eq=False)
class VaughanPieces():
    u: int
    S1: complex
    S2: complex
    S3: complex
    S2_small: complex
    S2_large: complex
    prime_power_correction: complex
    direct: complex
    a: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)

    @property
    def combined(self):
        return self.S1 - self.S2 - self.S3

    @property
    def residual(self):
        return abs(self.combined - self.direct)

    def as_dict(self):
        return {'u': self.u, 'S1': self.S1, 'S2': self.S2, 'S3': self.S3,
                'S2_small': self.S2_small, 'S2_large': self.S2_large,
                'prime_power_correction': self.prime_power_correction,
                'direct': self.direct, 'residual': self.residual}


def vaughan_coefficients(u, limit):
    '''
    a(k), the sum of mu(d) over d | k with d <= u, and c(k), the sum
    of mu(d) Lambda(m) over md = k with m, d <= u, for all k <= limit.
    '''
    if u < 1 or limit < 1:
        raise InvalidParameterException('u', u, "u and limit must be positive")
    mu = mobius_table(max(u, 1)).astype(np.int64)
    lam = von_mangoldt_table(max(u, 1))
    a = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, min(u, limit) + 1):
        if mu[d]:
            a[d::d] += mu[d]
    c = np.zeros(limit + 1, dtype=np.float64)
    for m in range(2, min(u, limit) + 1):
        if lam[m]:
            ds = np.arange(1, min(u, limit // m) + 1)
            c[m * ds] += mu[ds] * lam[m]
    return a, c


def _evaluate(f, n):
    values = np.asarray(f(n), dtype=np.complex128)
    return np.broadcast_to(values, n.shape)


def vaughan_decompose(P, f):
    '''
    Split the sum of Lambda(n) f(n) over P < n <= 2P into S1 - S2 - S3
    with u the integer cube root of P.

    Args:
        P: scale, at least 8
        f: callable taking an integer array n and returning f(n)

    Returns:
        VaughanPieces, where direct is the left side summed as it stands.
    '''
    P = int(P)
    if P < 8:
        raise InvalidParameterException('P', P, "must be at least 8")
    u = int(gmpy2.iroot(gmpy2.mpz(P), 3)[0])
    n = np.arange(P + 1, 2 * P + 1, dtype=np.int64)
    values = _evaluate(f, n)
    a, c = vaughan_coefficients(u, 2 * P)
    mu = mobius_table(u).astype(np.int64)
    lam = von_mangoldt_table(2 * P)

    def block(k, lo=1):
        ell = np.arange(max(lo, P // k + 1), 2 * P // k + 1, dtype=np.int64)
        return ell, values[k * ell - P - 1]

    S1 = []
    for k in range(1, u + 1):
        if mu[k]:
            ell, fv = block(k)
            S1.append(mu[k] * _fsum_complex(np.log(ell) * fv))
    S2_small, S2_large = [], []
    for k in range(1, min(u * u, 2 * P) + 1):
        if c[k]:
            ell, fv = block(k)
            (S2_small if k <= u else S2_large).append(c[k] * _fsum_complex(fv))
    S3 = []
    for k in range(u + 1, 2 * P // (u + 1) + 1):
        if a[k]:
            ell, fv = block(k, u + 1)
            if ell.size:
                S3.append(a[k] * _fsum_complex(lam[ell] * fv))

    weights = lam[P + 1:]
    powers = ~prime_mask(2 * P)[P + 1:] & (weights > 0)
    small, large = _fsum_complex(S2_small), _fsum_complex(S2_large)
    pieces = VaughanPieces(
        u, _fsum_complex(S1), small + large, _fsum_complex(S3), small, large,
        _fsum_complex(weights[powers] * values[powers]),
        _fsum_complex(weights * values), a, c)
    logger.debug("Vaughan dissection at P={0}, u={1}: residual {2:.3e}".format(P, u, pieces.residual))
    return pieces


def _sieve_primes_below(z):
    return [p for p in primes_up_to(z - 1).tolist() if p > 2]


def eval_Gamma(N, c, z, P=None, policy=DEFAULT_POLICY):
    '''
    Gamma, the sum of log p over the solutions of [p^c] + [m^c] = N with
    (m, P(z)) = 1, where P(z) is the product of the odd primes below z.
    Without P every solution counts, otherwise only P < p <= 2P.
    '''
    c = check_exponent(c)
    cfg = PSConfig(c, N, N, witnesses='all', policy=dict(policy))
    record = representations(int(N), cfg)
    sifting = _sieve_primes_below(int(z))
    total = []
    for p, m in record.witnesses:
        if P is not None and not P < p <= 2 * P:
            continue
        if all(m % q for q in sifting):
            total.append(math.log(p))
    return math.fsum(total)


def _lower_weights(D, z):
    table = rosser_weights(sieve_context(D, z))
    ds = [(d, minus) for d, (_, minus) in table.items() if minus]
    return table, ds


def eval_Sigma(N, c, D, j, z=None, P=None, policy=DEFAULT_POLICY, table=None):
    '''
    Sigma_j, the sum over d | P(z) of lambda^-(d) times the sum of
    log p psi(-(N + j - [p^c])^gamma / d) over P < p <= 2P.
    '''
    ctx = expsum_context(N, c, P, j=j, policy=policy)
    if table is None:
        table, weights = _lower_weights(D, z)
    else:
        weights = [(d, minus) for d, (_, minus) in table.items() if minus]
    primes, floors = _prime_floors(ctx)
    if not primes.size:
        return 0.0
    x = _floored_base(ctx, floors) ** float(ctx.gamma)
    logs = np.log(primes)
    total = [minus * math.fsum((logs * psi(-x / d)).tolist()) for d, minus in weights]
    return math.fsum(total)


@dataclass(frozen=True)
class GammaDecomposition():
    N: int
    P: int
    D: int
    z: int
    Gamma: float
    Gamma_lambda: float
    Gamma0: float
    Sigma0: float
    Sigma1: float

    @property
    def residual(self):
        return self.Gamma_lambda - (self.Gamma0 + self.Sigma0 - self.Sigma1)

    def as_dict(self):
        result = dict(self.__dict__)
        result['residual'] = self.residual
        return result


def gamma_decomposition(N, c, D, z=None, P=None, policy=DEFAULT_POLICY):
    '''
    Gamma against its lower sieve bound Gamma_lambda, where each solution
    is weighted by the sum of lambda^-(d) over d | (m, P(z)), and the
    split Gamma_lambda = Gamma0 + Sigma0 - Sigma1 from counting multiples
    of d in each preimage interval of [m^c].
    '''
    c = check_exponent(c)
    N = int(N)
    if P is None:
        P = usable_prime_scale(N, c, policy)
    ctx = expsum_context(N, c, P, policy=policy)
    table, weights = _lower_weights(D, z)
    primes, floors = _prime_floors(ctx)
    _floored_base(ctx, floors)

    lower = []
    for p, k in zip(primes.tolist(), floors.tolist()):
        m_lo, m_hi = preimage_interval(N - k, c, policy)
        for m in range(m_lo, m_hi + 1):
            lower.append(math.log(p) * sandwich_check(m, table)[0])
    sieve_factor = float(sum(Fraction(minus, d) for d, minus in weights))
    result = GammaDecomposition(
        N, ctx.P, table.ctx.D, table.ctx.z,
        eval_Gamma(N, c, table.ctx.z, ctx.P, policy),
        math.fsum(lower),
        sieve_factor * main_term_sum(N, c, ctx.P, policy),
        eval_Sigma(N, c, D, 0, P=ctx.P, policy=policy, table=table),
        eval_Sigma(N, c, D, 1, P=ctx.P, policy=policy, table=table))
    logger.debug("Gamma decomposition at N={0}: residual {1:.3e}".format(N, result.residual))
    return result


def weyl_vdc_check(zs, Q):
    '''
    Both sides of the Weyl - van der Corput inequality in squared form,
    |sum z_n|^2 <= (1 + L/Q) sum over |q| < Q of (1 - |q|/Q) Re sum z_(n+q) conj(z_n),
    for a sequence of length L.
    '''
    zs = np.asarray(zs, dtype=np.complex128)
    if Q < 1:
        raise InvalidParameterException('Q', Q, "must be a positive integer")
    L = len(zs)
    if not L:
        raise InvalidParameterException('zs', zs, "sequence must not be empty")
    lhs = abs(_fsum_complex(zs)) ** 2
    correlations = [np.vdot(zs[:L - q], zs[q:]).real for q in range(min(Q, L))]
    inner = correlations[0] + 2 * math.fsum((1 - q / Q) * correlations[q] for q in range(1, len(correlations)))
    return lhs, (1 + L / Q) * inner


def exponent_pair_probe(pair, lambda1s, a, sigma=1.5, b=None):
    '''
    |sum of e(f(n))| over a < n <= b for f(x) = lambda1 a (x/a)^sigma,
    against the exponent pair bound lambda1^kappa a^lambda + 1/lambda1.
    The implied constant is unknown, so the ratios are not asserted.
    '''
    a = int(a)
    b = 2 * a if b is None else int(b)
    if a < 1 or b <= a:
        raise InvalidParameterException('a', a, "need 1 <= a < b")
    n = np.arange(a + 1, b + 1, dtype=np.float64)
    rows = []
    for lambda1 in lambda1s:
        lambda1 = float(lambda1)
        total = abs(_fsum_complex(e(lambda1 * a * (n / a) ** sigma)))
        bound = vdc_bound(pair, lambda1, a)
        rows.append({'lambda1': lambda1, 'sum': total, 'bound': bound, 'ratio': total / bound})
    return rows


PROBE_CSV_HEADER = ('lambda1', 'sum', 'bound', 'ratio')


def asymptotic_scales(N, c, d=1):
    '''
    The scales the estimates run at: H = d N^(1-gamma) (log N)^3,
    Z = ceil(d N^(1-gamma) (log N)^7), R = d N^(1-gamma) (log N)^12
    and P = 1e-9 N^gamma.
    '''
    c = check_exponent(c)
    if N < 3 or d < 1:
        raise InvalidParameterException('N', N, "need N >= 3 and d >= 1")
    gamma = 1 / float(c)
    log_n = math.log(N)
    base = d * math.exp((1 - gamma) * log_n)
    return {
        'H': base * log_n ** 3,
        'Z': int(math.ceil(base * log_n ** 7)),
        'R': base * log_n ** 12,
        'P': 1e-9 * math.exp(gamma * log_n),
    }


def classify_r(r, v, N, gamma, alpha1, A1, R=None):
    '''
    Which range a frequency r falls into relative to x = v N^(gamma-1):
    'omega31' for |r| <= alpha1 x, 'omega32' for -A1 x < r < -alpha1 x,
    'omega33' for alpha1 x < r < A1 x, 'omega34' for A1 x <= |r| <= R,
    and 'outside' beyond R.
    '''
    if not 0 < alpha1 < A1:
        raise InvalidParameterException('alpha1', alpha1, "need 0 < alpha1 < A1")
    x = float(v) * float(N) ** (float(gamma) - 1)
    if R is not None and abs(r) > R:
        return 'outside'
    if abs(r) <= alpha1 * x:
        return 'omega31'
    if -A1 * x < r < -alpha1 * x:
        return 'omega32'
    if alpha1 * x < r < A1 * x:
        return 'omega33'
    return 'omega34'


def evaluation_report(kind, ctx, value, oracle=None):
    report = {'kind': kind, 'context': ctx.as_dict(), 'value': value, 'abs': abs(value)}
    if oracle is not None:
        report['oracle'] = oracle
        report['oracle_delta'] = abs(value - oracle)
    return report
