'''
    Desk-scale verification of N = [p^c] + [m^c] with p prime and m an
    almost prime.

    Every value [n^c] is certified: a double precision evaluation is
    trusted only away from integers, otherwise interval arithmetic with
    growing precision decides, and for rational c = a/b an exact integer
    root is the last resort.
'''

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import numpy as np
from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import to_int, round_floor

from .admissibility import prime_factor_bound, C_LIMIT
from .arithmetic import big_omega_table, big_omega, primes_up_to, primes_in_range, guard_table
from .exceptions import InvalidParameterException, PrecisionCapException, DomainViolationException
from .helpers import parse_rational, render_csv, render_json
from .harmonic import psi
from .sieve import sieve_context, rosser_weights

import logging
logger = logging.getLogger('psworkbench')

C_MAX = Fraction(3, 2)

DEFAULT_POLICY = {
    'base_digits': 30,
    'max_digits': 480,
    'tolerance': 1e-12,
    'exact_fallback': True,
}

# mpmath contexts carry their precision, one per thread
_contexts = threading.local()


def _interval_context(digits):
    ctx = getattr(_contexts, 'iv', None)
    if ctx is None:
        ctx = _contexts.iv = MPIntervalContext()
    ctx.dps = digits
    return ctx


def check_exponent(c):
    c = parse_rational(c, 'c')
    if not 1 < c < C_MAX:
        raise InvalidParameterException('c', c, "must lie in (1, 3/2)")
    return c


def _near_integer(x, tolerance):
    distance = np.minimum(x - np.floor(x), np.ceil(x) - x)
    return distance <= tolerance * np.maximum(1.0, x)


def interval_floor_pow(n, c, digits):
    '''
    Floor of n^c if the interval enclosure at the given precision
    decides it, else None.
    '''
    ctx = _interval_context(digits)
    exponent = ctx.mpf(c.numerator) / ctx.mpf(c.denominator)
    x = ctx.exp(exponent * ctx.log(ctx.mpf(n)))
    lower, upper = x._mpi_
    k_lower, k_upper = to_int(lower, round_floor), to_int(upper, round_floor)
    return k_lower if k_lower == k_upper else None


def exact_floor_pow(n, c):
    ''' Floor of n^(a/b) as the integer b-th root of n^a. '''
    return int(gmpy2.iroot(gmpy2.mpz(n) ** c.numerator, c.denominator)[0])


def floor_pow(n, c, policy=DEFAULT_POLICY):
    '''
    Certified [n^c].

    Args:
        n: positive integer
        c: exponent in (1, 3/2), exact or as a decimal literal
        policy: precision settings, see config.precision_policy

    Returns:
        The integer k with k <= n^c < k + 1.
    '''
    c = check_exponent(c)
    if n < 1:
        raise InvalidParameterException('n', n, "must be positive")
    if n == 1:
        return 1
    x = math.exp(float(c) * math.log(n))
    if not _near_integer(x, policy['tolerance']):
        return int(math.floor(x))
    digits = policy['base_digits']
    while digits <= policy['max_digits']:
        k = interval_floor_pow(n, c, digits)
        if k is not None:
            logger.debug("[{0}^{1}] = {2} decided at {3} digits".format(n, c, k, digits))
            return k
        digits *= 2
    if policy['exact_fallback']:
        logger.debug("[{0}^{1}] decided by exact integer root".format(n, c))
        return exact_floor_pow(n, c)
    raise PrecisionCapException(n ** float(c), policy['max_digits'],
                                "cannot decide [{0}^{1}]".format(n, c))


def floor_pow_table(n_max, c, policy=DEFAULT_POLICY, budget=10 ** 8):
    '''
    Certified [n^c] for all n <= n_max as an int64 array indexed by n.
    '''
    c = check_exponent(c)
    guard_table(n_max + 1, budget)
    n = np.arange(n_max + 1, dtype=np.float64)
    with np.errstate(divide='ignore'):
        x = np.exp(float(c) * np.log(n))
    table = np.floor(x)
    table[0] = 0
    table = table.astype(np.int64)
    suspicious = np.flatnonzero(_near_integer(x, policy['tolerance']))
    for index in suspicious:
        if index > 0:
            table[index] = floor_pow(int(index), c, policy)
    logger.debug("Floor table up to {0}: {1} entries escalated".format(n_max, len(suspicious)))
    return table


def preimage_interval(v, c, policy=DEFAULT_POLICY):
    '''
    The integers m with [m^c] = v, as (m_lo, m_hi). Empty if m_hi < m_lo,
    otherwise a single integer since [m^c] grows by at least one per step.
    '''
    c = check_exponent(c)
    if v < 1:
        raise InvalidParameterException('v', v, "must be positive")
    gamma = 1 / float(c)
    m_lo = max(1, int(math.ceil(v ** gamma)))
    while m_lo > 1 and floor_pow(m_lo - 1, c, policy) >= v:
        m_lo -= 1
    while floor_pow(m_lo, c, policy) < v:
        m_lo += 1
    m_hi = m_lo
    while floor_pow(m_hi, c, policy) > v:
        m_hi -= 1
    while floor_pow(m_hi + 1, c, policy) <= v:
        m_hi += 1
    return m_lo, m_hi


@dataclass(frozen=True)
class ProgressionCount():
    direct: int
    psi_form: float
    boundary: bool


def count_in_progression(v, d, c, policy=DEFAULT_POLICY, tolerance=1e-12):
    '''
    Number of m divisible by d with [m^c] = v, counted from the preimage
    and through the sawtooth identity.
    '''
    c = check_exponent(c)
    if d < 1:
        raise InvalidParameterException('d', d, "must be positive")
    m_lo, m_hi = preimage_interval(v, c, policy)
    direct = max(0, m_hi // d - (m_lo - 1) // d)
    gamma = 1 / float(c)
    a = v ** gamma / d
    b = (v + 1) ** gamma / d
    psi_form = b - a - psi(-b) + psi(-a)
    boundary = bool(_near_integer(a, tolerance) or _near_integer(b, tolerance))
    if boundary:
        logger.warning("Progression count for v={0}, d={1} sits on an integer boundary".format(v, d))
    return ProgressionCount(direct, psi_form, boundary)


def omega_sieve(limit, budget=10 ** 8):
    guard_table(limit + 1, budget, itemsize=1)
    return big_omega_table(limit)


def usable_prime_scale(N, c, policy=DEFAULT_POLICY):
    '''
    Largest integer P with [(2P)^c] < N.
    '''
    c = check_exponent(c)
    P = max(0, int(N ** (1 / float(c)) / 2))
    while P > 0 and floor_pow(2 * P, c, policy) >= N:
        P -= 1
    while floor_pow(2 * P + 2, c, policy) < N:
        P += 1
    return P


@dataclass
class PSConfig():
    c: Fraction
    n_lo: int
    n_hi: int
    segment_size: int = 65536
    workers: int = 1
    witnesses: str = 'first'
    policy: dict = field(default_factory=lambda: dict(DEFAULT_POLICY))
    max_n: int = 10 ** 8
    table_budget: int = 10 ** 8

    def __post_init__(self):
        self.c = check_exponent(self.c)
        self.n_lo, self.n_hi = int(self.n_lo), int(self.n_hi)
        if not 1 <= self.n_lo <= self.n_hi:
            raise InvalidParameterException('N range', (self.n_lo, self.n_hi), "need 1 <= N_lo <= N_hi")
        if self.n_hi > self.max_n:
            raise InvalidParameterException('N_hi', self.n_hi, "desk-scale limit is {0}".format(self.max_n))
        if self.witnesses not in ('first', 'all'):
            raise InvalidParameterException('witnesses', self.witnesses, "must be 'first' or 'all'")
        if self.segment_size < 1 or self.workers < 1:
            raise InvalidParameterException('segment_size', self.segment_size, "segments and workers must be positive")

    @property
    def gamma(self):
        return 1 / self.c

    @property
    def bound(self):
        ''' Bound on the number of prime factors, None outside its range of c. '''
        if self.c < C_LIMIT:
            return prime_factor_bound(self.c)
        return None

    @classmethod
    def from_config(cls, config, c, n_lo, n_hi, workers=None, witnesses=None):
        from .config import precision_policy
        return cls(c, n_lo, n_hi,
                   segment_size=config.getint('Scan', 'segment_size'),
                   workers=workers or config.getint('Scan', 'workers'),
                   witnesses=witnesses or config.get('Scan', 'witnesses'),
                   policy=precision_policy(config),
                   max_n=config.getint('Scan', 'max_n'),
                   table_budget=config.getint('Scan', 'table_budget'))


@dataclass(frozen=True)
class RepresentationRecord():
    N: int
    count: int
    witnesses: tuple
    min_omega: int
    bound: int
    satisfied: bool
    best: tuple = None
    sum_p: int = 0
    sum_m: int = 0

    CSV_HEADER = ('N', 'count', 'min_omega', 'bound', 'satisfied', 'p', 'm', 'sum_p', 'sum_m')

    def csv_row(self):
        p, m = self.witnesses[0] if self.witnesses else (None, None)
        return (self.N, self.count, self.min_omega, self.bound, int(self.satisfied), p, m, self.sum_p, self.sum_m)

    def as_dict(self):
        return {
            'N': self.N, 'count': self.count, 'witnesses': [list(w) for w in self.witnesses],
            'min_omega': self.min_omega, 'bound': self.bound, 'satisfied': self.satisfied,
            'best': list(self.best) if self.best else None,
        }


def _make_record(N, count, witnesses, min_omega, best, bound, sum_p=0, sum_m=0):
    if count == 0:
        return RepresentationRecord(N, 0, (), None, bound, False, None, 0, 0)
    satisfied = bound is None or min_omega <= bound
    return RepresentationRecord(N, count, tuple(witnesses), min_omega, bound, satisfied, best, sum_p, sum_m)


def largest_preimage(v_max, c, policy=DEFAULT_POLICY):
    ''' Largest m with [m^c] <= v_max, 0 if there is none. '''
    if v_max < 1:
        return 0
    m = max(1, int(v_max ** (1 / float(c))))
    while m > 0 and floor_pow(m, c, policy) > v_max:
        m -= 1
    while floor_pow(m + 1, c, policy) <= v_max:
        m += 1
    return m


@dataclass(frozen=True, eq=False)
class ScanTables():
    v_max: int
    m_max: int
    floors: np.ndarray
    inverse: np.ndarray
    omega: np.ndarray
    primes: np.ndarray
    prime_values: np.ndarray


def build_tables(cfg):
    '''
    Value table [m^c], its inverse, Omega(m) and the primes, shared
    read-only by all segments.
    '''
    v_max = cfg.n_hi - 1
    m_max = largest_preimage(v_max, cfg.c, cfg.policy)
    guard_table(max(v_max, 0) + 3 * (m_max + 1), cfg.table_budget)
    floors = floor_pow_table(m_max, cfg.c, cfg.policy, cfg.table_budget)
    inverse = np.zeros(max(v_max, 0) + 1, dtype=np.int64)
    inverse[floors[1:]] = np.arange(1, m_max + 1, dtype=np.int64)
    omega = big_omega_table(m_max)
    primes = primes_up_to(m_max)
    logger.debug("Scan tables: values up to {0}, m up to {1}, {2} primes".format(v_max, m_max, len(primes)))
    return ScanTables(v_max, m_max, floors, inverse, omega, primes, floors[primes])


def _scan_segment(tables, cfg, lo, hi):
    size = hi - lo + 1
    count = np.zeros(size, dtype=np.int64)
    sum_p = np.zeros(size, dtype=np.int64)
    sum_m = np.zeros(size, dtype=np.int64)
    min_omega = np.full(size, np.iinfo(np.int16).max, dtype=np.int16)
    first = np.zeros((2, size), dtype=np.int64)
    best = np.zeros((2, size), dtype=np.int64)
    collected = []
    for p, u in zip(tables.primes.tolist(), tables.prime_values.tolist()):
        if u >= hi:
            break
        v_lo, v_hi = max(1, lo - u), min(tables.v_max, hi - u)
        if v_lo > v_hi:
            continue
        window = tables.inverse[v_lo:v_hi + 1]
        hits = np.flatnonzero(window)
        if not hits.size:
            continue
        m = window[hits]
        pos = hits + (v_lo + u - lo)
        count[pos] += 1
        sum_p[pos] += p
        sum_m[pos] += m
        om = tables.omega[m]
        better = om < min_omega[pos]
        min_omega[pos[better]] = om[better]
        best[0, pos[better]] = p
        best[1, pos[better]] = m[better]
        fresh = first[0, pos] == 0
        first[0, pos[fresh]] = p
        first[1, pos[fresh]] = m[fresh]
        if cfg.witnesses == 'all':
            collected.append((pos, np.full(pos.size, p, dtype=np.int64), m))

    all_witnesses = {}
    if collected:
        pos = np.concatenate([item[0] for item in collected])
        ps = np.concatenate([item[1] for item in collected])
        ms = np.concatenate([item[2] for item in collected])
        for index in np.lexsort((ps, pos)):
            all_witnesses.setdefault(int(pos[index]), []).append((int(ps[index]), int(ms[index])))

    bound = cfg.bound
    records = []
    for i in range(size):
        if count[i] == 0:
            records.append(_make_record(lo + i, 0, (), None, None, bound))
            continue
        if cfg.witnesses == 'all':
            witnesses = all_witnesses[i]
        else:
            witnesses = [(int(first[0, i]), int(first[1, i]))]
        records.append(_make_record(lo + i, int(count[i]), witnesses, int(min_omega[i]),
                                    (int(best[0, i]), int(best[1, i])), bound,
                                    int(sum_p[i]), int(sum_m[i])))
    logger.debug("Segment [{0}, {1}] scanned".format(lo, hi))
    return records


def scan(cfg, tables=None):
    '''
    RepresentationRecord for every N of the configured range, ascending.
    Segments run on cfg.workers threads, the output does not depend on it.
    '''
    if tables is None:
        tables = build_tables(cfg)
    segments = [(lo, min(lo + cfg.segment_size - 1, cfg.n_hi))
                for lo in range(cfg.n_lo, cfg.n_hi + 1, cfg.segment_size)]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        for records in pool.map(lambda segment: _scan_segment(tables, cfg, *segment), segments):
            yield from records


def representations(N, cfg):
    '''
    All representations of a single N, found prime by prime through
    preimage_interval.
    '''
    c, policy = cfg.c, cfg.policy
    witnesses = []
    p_limit = largest_preimage(N - 1, c, policy)
    for p in primes_up_to(p_limit).tolist():
        u = floor_pow(p, c, policy)
        if u >= N:
            break
        m_lo, m_hi = preimage_interval(N - u, c, policy)
        witnesses.extend((p, m) for m in range(m_lo, m_hi + 1))
    if not witnesses:
        return _make_record(N, 0, (), None, None, cfg.bound)
    omegas = [big_omega(m) for _, m in witnesses]
    best = witnesses[omegas.index(min(omegas))]
    return _make_record(N, len(witnesses), witnesses, min(omegas), best, cfg.bound,
                        sum(p for p, _ in witnesses), sum(m for _, m in witnesses))


@dataclass(frozen=True)
class OracleRow():
    count: int
    min_omega: int
    sum_p: int
    sum_m: int


def naive_oracle(cfg, witnesses=False):
    '''
    Brute force over all pairs (p, m) with [p^c] + [m^c] in range.

    Returns:
        Dict N -> OracleRow for every N of the range, and with
        witnesses=True also the set of all (N, p, m).
    '''
    m_max = largest_preimage(cfg.n_hi - 1, cfg.c, cfg.policy)
    floors = floor_pow_table(m_max, cfg.c, cfg.policy, cfg.table_budget)
    omega = big_omega_table(m_max)
    ms = np.arange(1, m_max + 1, dtype=np.int64)
    values = floors[1:]
    size = cfg.n_hi - cfg.n_lo + 1
    count = np.zeros(size, dtype=np.int64)
    sum_p = np.zeros(size, dtype=np.int64)
    sum_m = np.zeros(size, dtype=np.int64)
    min_omega = np.full(size, np.iinfo(np.int16).max, dtype=np.int16)
    found = set()
    for p in primes_up_to(m_max).tolist():
        total = floors[p] + values
        selected = (total >= cfg.n_lo) & (total <= cfg.n_hi)
        if not selected.any():
            continue
        pos = total[selected] - cfg.n_lo
        hits = np.bincount(pos, minlength=size)
        count += hits
        sum_p += p * hits
        sum_m += np.bincount(pos, weights=ms[selected], minlength=size).astype(np.int64)
        np.minimum.at(min_omega, pos, omega[ms[selected]])
        if witnesses:
            found.update(zip(total[selected].tolist(), [p] * int(selected.sum()), ms[selected].tolist()))
    rows = {}
    for i in range(size):
        rows[cfg.n_lo + i] = OracleRow(int(count[i]), int(min_omega[i]) if count[i] else None,
                                       int(sum_p[i]), int(sum_m[i]))
    return (rows, found) if witnesses else rows


def verify_theorem(cfg, records=None, max_exceptions=20):
    '''
    Scan the range and summarize how often the almost-prime bound fails.
    Failures are reported, the bound itself is only claimed for large N.
    '''
    if records is None:
        records = scan(cfg)
    bound = cfg.bound
    checked = without = above = 0
    exceptions = []
    worst = None
    for record in records:
        checked += 1
        if record.count == 0:
            without += 1
        elif bound is not None and record.min_omega > bound:
            above += 1
        if not record.satisfied and len(exceptions) < max_exceptions:
            exceptions.append(record.as_dict())
        if record.count and (worst is None or record.min_omega > worst.min_omega):
            worst = record
    summary = {
        'range': [cfg.n_lo, cfg.n_hi],
        'c': cfg.c,
        'bound': bound,
        'checked': checked,
        'no_representation': without,
        'above_bound': above,
        'exceptions': exceptions,
        'worst_case': worst.as_dict() if worst else None,
    }
    logger.info("Checked {0} values of N for c={1}: {2} without representation, {3} above bound".format(
        checked, cfg.c, without, above))
    return summary


@dataclass(frozen=True)
class Gamma0Report():
    N: int
    P: int
    A_N: float
    sieve_factor: float
    product: float
    ratio: float

    def as_dict(self):
        return dict(self.__dict__)


def main_term_sum(N, c, P, policy=DEFAULT_POLICY):
    '''
    A(N), the sum of log p ((N+1-[p^c])^gamma - (N-[p^c])^gamma) over P < p <= 2P.
    '''
    c = check_exponent(c)
    primes = primes_in_range(P, 2 * P)
    if not primes.size:
        return 0.0
    floors = floor_pow_table(int(primes[-1]), c, policy)[primes]
    if (N - floors <= 0).any():
        raise DomainViolationException('P', P, "[p^c] reaches N = {0} for p <= 2P".format(N))
    gamma = 1 / float(c)
    rest = (N - floors).astype(np.float64)
    return float(np.sum(np.log(primes) * ((rest + 1) ** gamma - rest ** gamma)))


def gamma0_diagnostic(N, c, z, D, P=None, policy=DEFAULT_POLICY):
    '''
    Main term of the sieved count: A(N) times the lower-weight sum
    over d | P(z), with A(N) / N^(2 gamma - 1) as the normalized size.
    '''
    c = check_exponent(c)
    if P is None:
        P = usable_prime_scale(N, c, policy)
    P = max(1, int(P))
    A_N = main_term_sum(N, c, P, policy)
    table = rosser_weights(sieve_context(D, z))
    sieve_factor = float(sum(Fraction(minus, d) for d, (_, minus) in table.weights.items()))
    gamma = 1 / float(c)
    return Gamma0Report(N, P, A_N, sieve_factor, A_N * sieve_factor, A_N / N ** (2 * gamma - 1))


def records_to_csv(records):
    return render_csv(RepresentationRecord.CSV_HEADER, (record.csv_row() for record in records))


def summary_to_json(summary):
    return render_json(summary)
