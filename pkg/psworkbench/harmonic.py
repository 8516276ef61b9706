'''
    The sawtooth function, its trigonometric approximation with a
    majorant, smooth periodic cut-off functions and their shifted
    families, and the counting identity that links them.
'''

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidParameterException

import logging
logger = logging.getLogger('psworkbench')


def _scalar_or_array(result):
    return float(result) if np.ndim(result) == 0 else result


def e(x):
    '''
    exp(2 pi i x), with x reduced modulo 1 before scaling.
    '''
    return np.exp(2j * np.pi * np.mod(x, 1.0))


def psi(x):
    x = np.asarray(x, dtype=np.float64)
    return _scalar_or_array(0.5 - (x - np.floor(x)))


def vaaler_weight(t):
    '''
    J(t) = pi t (1 - |t|) cot(pi t) + |t| for 0 < |t| < 1, J(0) = 1.
    '''
    t = np.abs(np.asarray(t, dtype=np.float64))
    with np.errstate(divide='ignore', invalid='ignore'):
        value = np.pi * t * (1 - t) / np.tan(np.pi * t) + t
    return np.where(t == 0, 1.0, value)


@dataclass(frozen=True, eq=False)
class VaalerApprox():
    '''
    Coefficients a_h, b_h for -H <= h <= H, stored at index h + H.
    '''
    H: int
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)

    # |a_h| <= A_CONSTANT / |h| and b_h <= B_CONSTANT / H
    A_CONSTANT = 1 / math.pi
    B_CONSTANT = 0.5

    def frequencies(self):
        return np.arange(-self.H, self.H + 1)

    def coefficient_a(self, h):
        return complex(self.a[h + self.H])

    def coefficient_b(self, h):
        return float(self.b[h + self.H])

    def approximation(self, x):
        ''' Sum of a_h e(hx) over 0 < |h| <= H, real valued. '''
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        h = np.arange(1, self.H + 1)
        phases = e(np.outer(x, h))
        value = 2 * np.real(phases @ self.a[self.H + 1:])
        return _scalar_or_array(value if value.size > 1 else value[0])

    def majorant(self, x, with_imaginary=False):
        ''' Sum of b_h e(hx) over |h| <= H. '''
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        phases = e(np.outer(x, self.frequencies()))
        value = phases @ self.b.astype(np.complex128)
        if with_imaginary:
            return value
        value = np.real(value)
        return _scalar_or_array(value if value.size > 1 else value[0])

    def slack(self, x):
        ''' majorant - |psi - approximation|, non-negative by construction '''
        x = np.asarray(x, dtype=np.float64)
        return self.majorant(x) - np.abs(psi(x) - self.approximation(x))


def vaaler(H):
    if H < 1:
        raise InvalidParameterException('H', H, "must be at least 1")
    h = np.arange(-H, H + 1)
    a = np.zeros(2 * H + 1, dtype=np.complex128)
    nonzero = h != 0
    a[nonzero] = vaaler_weight(h[nonzero] / (H + 1)) / (2j * np.pi * h[nonzero])
    b = (1 - np.abs(h) / (H + 1)) / (2 * H + 2)
    logger.debug("Vaaler coefficients for H={0} built".format(H))
    return VaalerApprox(H, a, b)


def irwin_hall_cdf(s, r):
    '''
    Distribution function of a sum of r independent uniform [0, 1] variables.
    '''
    s = np.asarray(s, dtype=np.float64)
    # evaluate on the lower half and mirror for accuracy
    upper = s > r / 2
    t = np.clip(np.where(upper, r - s, s), 0, r / 2)
    total = np.zeros_like(t)
    for k in range(r + 1):
        total += np.where(t > k, (-1) ** k * math.comb(r, k) * np.maximum(t - k, 0) ** r, 0.0)
    total /= math.factorial(r)
    result = np.where(upper, 1.0 - total, total)
    result = np.where(s <= 0, 0.0, np.where(s >= r, 1.0, result))
    return _scalar_or_array(result)


@dataclass(frozen=True)
class SmoothTheta():
    '''
    Indicator of [alpha, beta] smoothed by the r-fold convolution of a
    box of width Delta/r, extended with period 1.
    '''
    alpha: float
    beta: float
    Delta: float
    r: int
    strict: bool = True

    def __post_init__(self):
        width = self.beta - self.alpha
        if self.strict and not 0 < self.Delta < 0.25:
            raise InvalidParameterException('Delta', self.Delta, "must lie in (0, 1/4)")
        if not 0 < self.Delta <= 0.5:
            raise InvalidParameterException('Delta', self.Delta, "must lie in (0, 1/2]")
        if not self.Delta <= width <= 1 - self.Delta:
            raise InvalidParameterException('beta - alpha', width, "must lie in [Delta, 1 - Delta]")
        if self.r < 1:
            raise InvalidParameterException('r', self.r, "must be at least 1")

    def _kernel_cdf(self, t):
        return irwin_hall_cdf((np.asarray(t) + self.Delta / 2) * self.r / self.Delta, self.r)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        y = np.mod(x - self.alpha + self.Delta / 2, 1.0) - self.Delta / 2
        value = self._kernel_cdf(y) - self._kernel_cdf(y - (self.beta - self.alpha))
        return _scalar_or_array(value)

    def g(self, m):
        '''
        Fourier coefficients, g(0) = beta - alpha.
        '''
        m = np.asarray(m, dtype=np.float64)
        safe = np.where(m == 0, 1.0, m)
        box = (e(-safe * self.alpha) - e(-safe * self.beta)) / (2j * np.pi * safe)
        value = box * np.sinc(safe * self.Delta / self.r) ** self.r
        value = np.where(m == 0, self.beta - self.alpha, value)
        return complex(value) if value.ndim == 0 else value

    def fourier_bound(self, m):
        '''
        min(beta - alpha, 1/(pi|m|), (1/(pi|m|)) (r/(pi|m|Delta))^r)
        '''
        m = np.abs(np.asarray(m, dtype=np.float64))
        first = 1 / (np.pi * m)
        second = first * (self.r / (np.pi * m * self.Delta)) ** self.r
        return np.minimum(self.beta - self.alpha, np.minimum(first, second))

    def partial_sum(self, x, M):
        ''' Sum of g(m) e(mx) over |m| <= M. '''
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        m = np.arange(1, M + 1)
        value = self.g(0).real + 2 * np.real(e(np.outer(x, m)) @ self.g(m))
        return _scalar_or_array(value if value.size > 1 else value[0])


def smooth_theta(alpha, beta, Delta, r):
    return SmoothTheta(float(alpha), float(beta), float(Delta), int(r))


@dataclass(frozen=True, eq=False)
class ThetaFamily():
    Z: int
    r: int
    base: SmoothTheta = field(repr=False)

    def member(self, z, x):
        return self.base(np.asarray(x, dtype=np.float64) - z / (2 * self.Z))

    def members(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.array([self.member(z, x) for z in range(2 * self.Z)])

    def total(self, x):
        return _scalar_or_array(np.sum(self.members(x), axis=0))

    def g(self, z, m):
        m = np.asarray(m, dtype=np.float64)
        return self.base.g(m) * e(-m * z / (2 * self.Z))

    def partial_sum(self, z, x, M):
        x = np.asarray(x, dtype=np.float64)
        return self.base.partial_sum(x - z / (2 * self.Z), M)


def theta_family(Z, r):
    '''
    The 2Z shifts theta(x - z/(2Z)) of the cut-off with alpha = -1/(4Z),
    beta = 1/(4Z) and Delta = 1/(2Z). They sum to 1 everywhere.
    '''
    if Z < 1:
        raise InvalidParameterException('Z', Z, "must be at least 1")
    base = SmoothTheta(-1 / (4 * Z), 1 / (4 * Z), 1 / (2 * Z), int(r), strict=Z > 2)
    return ThetaFamily(Z, int(r), base)


def counting_identity_check(a, b):
    '''
    Number of integers in [a, b) against b - a - psi(-b) + psi(-a).

    Returns:
        (lhs, rhs) with an integer lhs. Integer endpoints are evaluated
        but logged, there the identity holds only with psi(0) = 1/2.
    '''
    if not a < b:
        raise InvalidParameterException('b', b, "must exceed a = {0}".format(a))
    if float(a).is_integer() or float(b).is_integer():
        logger.warning("Counting identity at integer endpoint a={0}, b={1}".format(a, b))
    lhs = math.ceil(b) - math.ceil(a)
    rhs = b - a - psi(-b) + psi(-a)
    return lhs, rhs


def vaaler_table(H, xs):
    approx = vaaler(H)
    xs = np.asarray(xs, dtype=np.float64)
    return list(zip(xs.tolist(), np.atleast_1d(psi(xs)).tolist(),
                    np.atleast_1d(approx.approximation(xs)).tolist(),
                    np.atleast_1d(approx.majorant(xs)).tolist()))


def theta_table(Z, r, xs):
    family = theta_family(Z, r)
    xs = np.asarray(xs, dtype=np.float64)
    return list(zip(xs.tolist(), np.atleast_1d(family.member(0, xs)).tolist(),
                    np.atleast_1d(family.total(xs)).tolist()))
