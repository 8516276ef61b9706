'''
    Exact calculus of van der Corput exponent pairs.

    Words over the letters A and B are applied right to left,
    so "BAABAA" means B(A(A(B(A(A(seed)))))).
'''

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import InvalidParameterException
from .helpers import parse_rational

import logging
logger = logging.getLogger('psworkbench')

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExponentPair():
    kappa: Fraction
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'kappa', Fraction(self.kappa))
        object.__setattr__(self, 'lam', Fraction(self.lam))
        if not (0 <= self.kappa <= HALF <= self.lam <= 1) or self.kappa + self.lam > 1:
            raise InvalidParameterException(
                'pair', self, "need 0 <= kappa <= 1/2 <= lambda <= 1 and kappa + lambda <= 1")

    def __str__(self):
        return "({0}, {1})".format(self.kappa, self.lam)

    def as_tuple(self):
        return (self.kappa, self.lam)


TRIVIAL_PAIR = ExponentPair(HALF, HALF)


def a_process(p):
    '''
    The A process (kappa, lambda) -> (kappa/(2kappa+2), (kappa+lambda+1)/(2kappa+2)).
    '''
    denominator = 2 * p.kappa + 2
    return ExponentPair(p.kappa / denominator, (p.kappa + p.lam + 1) / denominator)


def b_process(p):
    '''
    The B process (kappa, lambda) -> (lambda - 1/2, kappa + 1/2), an involution.
    '''
    return ExponentPair(p.lam - HALF, p.kappa + HALF)


PROCESSES = {'A': a_process, 'B': b_process}


def reduce_word(word):
    while 'BB' in word:
        word = word.replace('BB', '')
    return word


_TOKEN = re.compile(r'([AB])(?:\^?(\d+))?')


def parse_word(text):
    '''
    Parse a word such as "BAABAA", "BA^2BA^2" or "BA2BA2" into its
    expanded and reduced letter string. The empty word is "" or "e".
    '''
    text = text.strip().replace(' ', '')
    if text in ('', 'e'):
        return ''
    letters = []
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise InvalidParameterException(
                'word', text, "only the letters A and B with optional exponents are allowed")
        letters.append(match.group(1) * int(match.group(2) or 1))
        position = match.end()
    return reduce_word(''.join(letters))


def word_to_string(word, compact=False):
    if not compact:
        return word
    parts = []
    for letter, run in itertools.groupby(word):
        count = len(list(run))
        parts.append(letter if count == 1 else "{0}^{1}".format(letter, count))
    return ''.join(parts)


def apply_word(word, seed=TRIVIAL_PAIR):
    result = seed
    for letter in reversed(word):
        try:
            result = PROCESSES[letter](result)
        except KeyError:
            raise InvalidParameterException('word', word, "unknown letter {0}".format(letter))
    return result


def reduced_words(max_len):
    '''
    All words without adjacent "BB", ordered by length, then lexicographically.
    '''
    if max_len < 0:
        raise InvalidParameterException('max_len', max_len, "must not be negative")
    yield ''
    level = ['']
    for _ in range(max_len):
        level = sorted(w + letter for w in level for letter in 'AB' if not (letter == 'B' and w.endswith('B')))
        yield from level


def enumerate_pairs(max_len, seed=TRIVIAL_PAIR):
    '''
    Apply every reduced word up to the given length to the seed.

    Returns:
        List of (word, pair) tuples, one per distinct pair. The first
        word producing a pair wins, which is the shortest and then
        lexicographically least one.
    '''
    seen = set()
    result = []
    for word in reduced_words(max_len):
        pair = apply_word(word, seed)
        if pair not in seen:
            seen.add(pair)
            result.append((word, pair))
    logger.debug("{0} distinct exponent pairs from words up to length {1}".format(len(result), max_len))
    return result


def vdc_bound(p, lambda1, a):
    if lambda1 <= 0:
        raise InvalidParameterException('lambda1', lambda1, "must be positive")
    if a < 1:
        raise InvalidParameterException('a', a, "must be at least 1")
    return float(lambda1) ** float(p.kappa) * float(a) ** float(p.lam) + 1.0 / float(lambda1)


def pair_from_strings(kappa, lam):
    return ExponentPair(parse_rational(kappa, 'kappa'), parse_rational(lam, 'lambda'))
