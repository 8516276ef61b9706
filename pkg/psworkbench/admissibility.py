'''
    The linear constraint system in (gamma, delta, q) attached to an
    exponent pair, its exact two-variable solution and what follows from
    it: the admissible range of c, the sieve level and the number of
    prime factors of the almost prime.

    All constraints read lhs < rhs with the target exponent 2*gamma - 1
    on the right, except the range of q, which is closed.
'''

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import InvalidParameterException
from .exponent_pairs import ExponentPair, enumerate_pairs, word_to_string

import logging
logger = logging.getLogger('psworkbench')

MAX_SEARCH_WORD_LEN = 12
C_LIMIT = Fraction(247, 238)


@dataclass(frozen=True)
class LinearForm():
    '''
    The value g*gamma + d*delta + q*q + c0 with exact coefficients.
    '''
    g: Fraction = Fraction(0)
    d: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    c0: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ('g', 'd', 'q', 'c0'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __add__(self, other):
        return LinearForm(self.g + other.g, self.d + other.d, self.q + other.q, self.c0 + other.c0)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, factor):
        factor = Fraction(factor)
        return LinearForm(factor * self.g, factor * self.d, factor * self.q, factor * self.c0)

    __rmul__ = __mul__

    def evaluate(self, gamma, delta, q):
        return self.g * gamma + self.d * delta + self.q * q + self.c0

    def __str__(self):
        terms = []
        for coefficient, symbol in ((self.c0, ''), (self.g, 'gamma'), (self.d, 'delta'), (self.q, 'q')):
            if coefficient:
                terms.append("{0}{1}".format(coefficient, '*' + symbol if symbol else ''))
        return ' + '.join(terms) or '0'


GAMMA = LinearForm(g=1)
DELTA = LinearForm(d=1)
Q = LinearForm(q=1)
ONE = LinearForm(c0=1)
TARGET = 2 * GAMMA - ONE


@dataclass(frozen=True)
class Constraint():
    tag: str
    lhs: LinearForm
    rhs: LinearForm
    strict: bool = True
    block: str = 'omega34'

    @property
    def form(self):
        ''' lhs - rhs, which has to stay negative (non-positive if not strict) '''
        return self.lhs - self.rhs

    def holds(self, gamma, delta, q):
        value = self.form.evaluate(gamma, delta, q)
        return value < 0 if self.strict else value <= 0


@dataclass
class ConstraintSystem():
    pair: ExponentPair
    constraints: list = field(default_factory=list)

    def tags(self):
        return [c.tag for c in self.constraints]

    def holds(self, gamma, delta, q):
        return all(c.holds(gamma, delta, q) for c in self.constraints)

    def violated(self, gamma, delta, q):
        return [c.tag for c in self.constraints if not c.holds(gamma, delta, q)]


@dataclass(frozen=True)
class LPSolution():
    '''
    Supremum of delta at fixed gamma with an optimal vertex (delta, q).
    '''
    gamma: Fraction
    delta: Fraction
    q: Fraction
    binding: tuple
    vertices: int

    @property
    def feasible(self):
        return self.delta > 0


@dataclass(frozen=True)
class AdmissibleParams():
    gamma: Fraction
    c: Fraction
    delta_max: Fraction
    q_opt: Fraction
    prime_factor_bound: int
    feasible: bool


def second_term_exponent(p):
    '''
    The N-exponent E(kappa, lambda, gamma) of the second van der Corput
    term, as a form in gamma.
    '''
    kappa, lam = p.kappa, p.lam
    return (Fraction(1, 2) * (kappa * (ONE - GAMMA) + lam * GAMMA)
            + Fraction(1, 4) * (1 - lam) * GAMMA
            + Fraction(1, 2) * GAMMA)


def build_constraints(p):
    if not isinstance(p, ExponentPair):
        p = ExponentPair(*p)
    kappa = p.kappa
    half = Fraction(1, 2)
    constraints = [
        Constraint('omega34_first', ONE + 2 * DELTA - half * Q, TARGET),
        Constraint('omega34_second',
                   (kappa / 2) * Q + (2 + kappa / 2) * DELTA
                   + (1 + kappa / 2) * (ONE - GAMMA) + second_term_exponent(p),
                   TARGET),
        Constraint('omega34_reciprocal',
                   half * ONE + Fraction(1, 4) * GAMMA + 2 * DELTA - half * Q, TARGET),
        Constraint('omega33_1', GAMMA + DELTA - half * Q, TARGET, block='omega33'),
        Constraint('omega33_2', Fraction(1, 4) * ONE + Fraction(5, 8) * GAMMA + DELTA + Fraction(1, 4) * Q,
                   TARGET, block='omega33'),
        Constraint('omega33_3', Fraction(7, 8) * GAMMA + Fraction(5, 4) * DELTA - Fraction(1, 4) * Q,
                   TARGET, block='omega33'),
        Constraint('omega33_4', Fraction(1, 12) * ONE + Fraction(5, 6) * GAMMA + DELTA + Fraction(1, 12) * Q,
                   TARGET, block='omega33'),
        Constraint('omega33_5', Fraction(23, 24) * GAMMA + Fraction(13, 12) * DELTA - Fraction(1, 12) * Q,
                   TARGET, block='omega33'),
        Constraint('q_nonnegative', -1 * Q, LinearForm(), strict=False, block='range'),
        Constraint('q_below_k', Q, Fraction(1, 3) * GAMMA, strict=False, block='range'),
    ]
    return ConstraintSystem(p, constraints)


def _best_vertex(rows, key):
    '''
    Exact vertex enumeration for a two-variable polyhedron.

    Args:
        rows: (tag, a, b, c) tuples standing for a*x + b*y + c <= 0
        key: ordering of (x, y) vertices, the largest one wins

    Returns:
        ((x, y), binding tags, number of feasible vertices), or None
        if the polyhedron has no vertex.
    '''
    vertices = set()
    for (_, a1, b1, c1), (_, a2, b2, c2) in itertools.combinations(rows, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (b1 * c2 - b2 * c1) / det
        y = (a2 * c1 - a1 * c2) / det
        if all(a * x + b * y + c <= 0 for _, a, b, c in rows):
            vertices.add((x, y))
    if not vertices:
        return None
    best = max(vertices, key=key)
    binding = tuple(sorted(tag for tag, a, b, c in rows if a * best[0] + b * best[1] + c == 0))
    return best, binding, len(vertices)


def lp_solve(system, gamma):
    '''
    Supremum of delta over the (delta, q) slice of the system at gamma.
    The value may be non-positive, max_delta is the feasible view of it.
    '''
    gamma = Fraction(gamma)
    if not Fraction(1, 2) < gamma <= 1:
        raise InvalidParameterException('gamma', gamma, "must lie in (1/2, 1]")
    rows = [(c.tag, c.form.d, c.form.q, c.form.g * gamma + c.form.c0) for c in system.constraints]
    # delta as large as possible, then q as small as possible
    result = _best_vertex(rows, key=lambda v: (v[0], -v[1]))
    if result is None:
        raise InvalidParameterException('gamma', gamma, "empty range for q")
    (delta, q), binding, count = result
    logger.debug("LP at gamma={0}: {1} vertices, delta={2}, q={3}".format(gamma, count, delta, q))
    return LPSolution(gamma, delta, q, binding, count)


def max_delta(p, gamma):
    '''
    Largest sieve exponent delta admissible at gamma, or None if no delta > 0 is.
    '''
    solution = lp_solve(build_constraints(p), gamma)
    return solution.delta if solution.feasible else None


def gamma_threshold(p):
    '''
    Infimum of the gamma with a positive admissible delta, 1 if there is none.

    The constraint set is a polyhedron in (gamma, delta, q), so the
    largest delta is concave in gamma and the infimum is the smallest
    gamma of the slice delta = 0.
    '''
    system = build_constraints(p)
    if not lp_solve(system, 1).feasible:
        return Fraction(1)
    rows = [(c.tag, c.form.g, c.form.q, c.form.c0) for c in system.constraints]
    rows.append(('gamma_above_half', Fraction(-1), Fraction(0), Fraction(1, 2)))
    rows.append(('gamma_at_most_one', Fraction(1), Fraction(0), Fraction(-1)))
    result = _best_vertex(rows, key=lambda v: (-v[0], -v[1]))
    if result is None:
        return Fraction(1)
    (gamma, _), binding, _ = result
    if gamma <= Fraction(1, 2):
        raise InvalidParameterException('pair', p, "admissible down to gamma = 1/2, outside the model")
    logger.debug("Threshold for {0}: gamma = {1}, active {2}".format(p, gamma, ', '.join(binding)))
    return gamma


def optimal_q(p, gamma, delta):
    '''
    The q at which the two pair-dependent terms have equal exponents.
    None if (gamma, delta) is not admissible or the terms never balance.
    '''
    gamma, delta = Fraction(gamma), Fraction(delta)
    system = build_constraints(p)
    solution = lp_solve(system, gamma)
    if not solution.feasible or delta > solution.delta:
        return None
    first, second = system.constraints[0].form, system.constraints[1].form
    slope = first.q - second.q
    if slope == 0:
        return None
    offset = (second.g - first.g) * gamma + (second.d - first.d) * delta + second.c0 - first.c0
    return offset / slope


def prime_factor_bound(c):
    '''
    Number of prime factors the almost prime may have, [450/(247-238c)] + 1.
    '''
    c = Fraction(c)
    if not 1 <= c < C_LIMIT:
        raise InvalidParameterException('c', c, "must lie in [1, 247/238)")
    return int(Fraction(450) / (247 - 238 * c)) + 1


def pair_prime_factor_bound(p, c):
    '''
    [2*gamma/delta] + 1 with the largest admissible delta of the given pair.
    '''
    gamma = 1 / Fraction(c)
    delta = max_delta(p, gamma)
    if delta is None:
        raise InvalidParameterException('c', c, "not admissible for the pair {0}".format(p))
    return int(2 * gamma / delta) + 1


def delta_formula(p):
    '''
    Slope and intercept of the largest admissible delta as a linear
    function of gamma right above the threshold.
    '''
    system = build_constraints(p)
    threshold = gamma_threshold(p)
    if threshold >= 1:
        return None
    h = (1 - threshold) / 2
    for _ in range(64):
        first = lp_solve(system, threshold + h).delta
        second = lp_solve(system, threshold + h / 2).delta
        slope = first / h
        if second == slope * h / 2:
            return slope, -slope * threshold
        h /= 2
    logger.warning("No linear piece found above the threshold of {0}".format(p))
    return None


def admissible_params(p, gamma):
    gamma = Fraction(gamma)
    solution = lp_solve(build_constraints(p), gamma)
    if not solution.feasible:
        return AdmissibleParams(gamma, 1 / gamma, solution.delta, solution.q, 0, False)
    return AdmissibleParams(gamma, 1 / gamma, solution.delta, optimal_q(p, gamma, solution.delta),
                            int(2 * gamma / solution.delta) + 1, True)


def search_best_pair(max_word_len, workers=1):
    '''
    The enumerated pair with the smallest gamma threshold.

    Returns:
        (word, pair, threshold) of the winner, ties going to the shorter
        and then lexicographically smaller word.
    '''
    if not 0 <= max_word_len <= MAX_SEARCH_WORD_LEN:
        raise InvalidParameterException('max_word_len', max_word_len,
                                        "must lie in [0, {0}]".format(MAX_SEARCH_WORD_LEN))
    candidates = enumerate_pairs(max_word_len)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        thresholds = list(pool.map(lambda candidate: gamma_threshold(candidate[1]), candidates))
    best = min(zip(candidates, thresholds), key=lambda item: (item[1], len(item[0][0]), item[0][0]))
    (word, pair), threshold = best
    logger.info("Best of {0} pairs: {1} = {2}, gamma threshold {3}".format(
        len(candidates), word_to_string(word, compact=True) or 'e', pair, threshold))
    return word, pair, threshold


def pair_report(word, p, gammas=()):
    threshold = gamma_threshold(p)
    formula = delta_formula(p)
    samples = []
    for gamma in gammas:
        params = admissible_params(p, gamma)
        solution = lp_solve(build_constraints(p), gamma)
        samples.append({
            'gamma': params.gamma,
            'delta_max': params.delta_max if params.feasible else None,
            'q_opt': params.q_opt if params.feasible else None,
            'prime_factor_bound': params.prime_factor_bound if params.feasible else None,
            'binding_constraints': list(solution.binding),
        })
    return {
        'word': word,
        'word_compact': word_to_string(word, compact=True),
        'kappa': p.kappa,
        'lambda': p.lam,
        'gamma_threshold': threshold,
        'c_threshold': 1 / threshold,
        'delta_formula': None if formula is None else {'slope': formula[0], 'intercept': formula[1]},
        'delta_formula_samples': samples,
        'binding_constraints': samples[0]['binding_constraints'] if samples else [],
        'conditional_on_imported_bounds': True,
    }
