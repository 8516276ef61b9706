'''
    Tables of classical arithmetic functions, built by numpy sieving.

    All tables are indexed by n itself, entry 0 is unused.
'''

import math

import numpy as np

from .exceptions import MemoryGuardException, InvalidParameterException
from . import hostinfo

import logging
logger = logging.getLogger('psworkbench')


def guard_table(entries, budget, itemsize=8):
    '''
    Refuse to allocate tables beyond the configured entry budget
    or beyond the memory currently available on the host.
    '''
    if entries > budget:
        raise MemoryGuardException(entries, budget)
    available = hostinfo.available_memory()
    if available is not None and entries * itemsize > available:
        raise MemoryGuardException(entries, available // itemsize,
                                   "not enough free memory on this host")


def prime_mask(limit):
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return is_prime


def primes_up_to(limit):
    if limit < 2:
        return np.array([], dtype=np.int64)
    return np.flatnonzero(prime_mask(limit)).astype(np.int64)


def primes_in_range(lo, hi):
    '''
    Primes p with lo < p <= hi, by a segmented sieve over (lo, hi].
    '''
    lo = max(lo, 1)
    if hi <= lo:
        return np.array([], dtype=np.int64)
    mask = np.ones(hi - lo, dtype=bool)   # entry i stands for lo + 1 + i
    for p in primes_up_to(math.isqrt(hi)):
        p = int(p)
        start = max(p * p, ((lo + 1 + p - 1) // p) * p)
        if start <= hi:
            mask[start - lo - 1::p] = False
    return (np.flatnonzero(mask) + lo + 1).astype(np.int64)


def _prime_power_exponents(limit, p):
    '''
    Exponent of p in n for the multiples n = p, 2p, 3p, ... of p up to limit.
    '''
    count = limit // p
    exponents = np.ones(count, dtype=np.int64)
    q = p
    while q <= limit // p:
        q *= p
        step = q // p
        exponents[step - 1::step] += 1
    return exponents


def big_omega_table(limit):
    '''
    Number of prime factors counted with multiplicity, Omega(1) = 0.
    '''
    omega = np.zeros(limit + 1, dtype=np.int8)
    for p in primes_up_to(limit):
        p = int(p)
        q = p
        while q <= limit:
            omega[q::q] += 1
            q *= p
    logger.debug("Omega table up to {0} built".format(limit))
    return omega


def mobius_table(limit):
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(limit):
        p = int(p)
        mu[p::p] *= -1
        if p <= limit // p:
            mu[p * p::p * p] = 0
    return mu


def von_mangoldt_table(limit):
    lam = np.zeros(limit + 1, dtype=np.float64)
    for p in primes_up_to(limit):
        p = int(p)
        q = p
        while q <= limit:
            lam[q] = math.log(p)
            q *= p
    return lam


def divisor_count_table(limit):
    tau = np.ones(limit + 1, dtype=np.int64)
    tau[0] = 0
    for p in primes_up_to(limit):
        p = int(p)
        tau[p::p] *= _prime_power_exponents(limit, p) + 1
    return tau


def big_omega(n):
    '''
    Omega(n) for a single integer by trial division.
    '''
    if n < 1:
        raise InvalidParameterException('n', n, "must be positive")
    count = 0
    d = 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    return count + (1 if n > 1 else 0)


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True
