'''
    Test cases for the exponent pair calculus.
'''

import unittest
from fractions import Fraction

from psworkbench.exceptions import InvalidParameterException
from psworkbench.exponent_pairs import (ExponentPair, TRIVIAL_PAIR, a_process, b_process, apply_word,
                                        parse_word, word_to_string, reduced_words, enumerate_pairs,
                                        vdc_bound, pair_from_strings, reduce_word)

from .helpers.sequences import rng


class Processes(unittest.TestCase):

    def test_baabaa_chain(self):
        expected = [(Fraction(1, 6), Fraction(2, 3)),
                    (Fraction(1, 14), Fraction(11, 14)),
                    (Fraction(2, 7), Fraction(4, 7)),
                    (Fraction(1, 9), Fraction(13, 18)),
                    (Fraction(1, 20), Fraction(33, 40)),
                    (Fraction(13, 40), Fraction(22, 40))]
        pair = TRIVIAL_PAIR
        for letter, step in zip(reversed('BAABAA'), expected):
            pair = a_process(pair) if letter == 'A' else b_process(pair)
            self.assertEqual(step, pair.as_tuple())

    def test_apply_word(self):
        self.assertEqual(ExponentPair(Fraction(13, 40), Fraction(22, 40)), apply_word('BAABAA'))

    def test_empty_word_is_identity(self):
        self.assertEqual(TRIVIAL_PAIR, apply_word(''))

    def test_b_after_baabaa(self):
        pair = apply_word('B', ExponentPair(Fraction(13, 40), Fraction(22, 40)))
        # (lambda - 1/2, kappa + 1/2)
        self.assertEqual((Fraction(1, 20), Fraction(33, 40)), pair.as_tuple())

    def test_b_is_involution(self):
        for word, pair in enumerate_pairs(5):
            self.assertEqual(pair, b_process(b_process(pair)))

    def test_b_is_involution_on_random_pairs(self):
        generator = rng()
        for _ in range(1000):
            i = int(generator.integers(0, 1001))
            j = int(generator.integers(0, 1001 - i))
            pair = ExponentPair(Fraction(i, 2000), Fraction(1, 2) + Fraction(j, 2000))
            self.assertEqual(pair, b_process(b_process(pair)), pair)

    def test_results_stay_in_domain(self):
        for word, pair in enumerate_pairs(8):
            self.assertTrue(0 <= pair.kappa <= Fraction(1, 2) <= pair.lam <= 1)
            self.assertTrue(pair.kappa + pair.lam <= 1)

    def test_invalid_pair(self):
        with self.assertRaises(InvalidParameterException):
            ExponentPair(Fraction(3, 4), Fraction(1, 2))
        with self.assertRaises(InvalidParameterException):
            ExponentPair(Fraction(1, 2), Fraction(2, 3))


class Words(unittest.TestCase):

    def test_parse_forms(self):
        for text in ('BAABAA', 'BA^2BA^2', 'BA2BA2', ' BA^2 BA^2 '):
            self.assertEqual('BAABAA', parse_word(text))

    def test_parse_empty(self):
        self.assertEqual('', parse_word(''))
        self.assertEqual('', parse_word('e'))

    def test_parse_reduces(self):
        self.assertEqual('', parse_word('BB'))
        self.assertEqual('AA', parse_word('ABBA'))
        self.assertEqual('A', reduce_word('BBBBA'))

    def test_parse_rejects(self):
        with self.assertRaises(InvalidParameterException):
            parse_word('BC')

    def test_compact(self):
        self.assertEqual('BA^2BA^2', word_to_string('BAABAA', compact=True))
        self.assertEqual('BAABAA', word_to_string('BAABAA'))

    def test_reduced_words(self):
        words = list(reduced_words(3))
        self.assertEqual(['', 'A', 'B', 'AA', 'AB', 'BA', 'AAA', 'AAB', 'ABA', 'BAA', 'BAB'], words)
        self.assertFalse(any('BB' in word for word in reduced_words(8)))

    def test_enumerate_zero(self):
        self.assertEqual([('', TRIVIAL_PAIR)], enumerate_pairs(0))

    def test_enumerate_distinct(self):
        result = enumerate_pairs(6)
        pairs = [pair for _, pair in result]
        self.assertEqual(len(pairs), len(set(pairs)))
        self.assertIn(('BAABAA', apply_word('BAABAA')), result)


class Helpers(unittest.TestCase):

    def test_vdc_bound(self):
        self.assertAlmostEqual(100 ** 0.5 * 10000 ** 0.5 + 0.01, vdc_bound(TRIVIAL_PAIR, 100, 10000))

    def test_vdc_bound_rejects(self):
        with self.assertRaises(InvalidParameterException):
            vdc_bound(TRIVIAL_PAIR, 0, 10)

    def test_pair_from_strings(self):
        self.assertEqual(ExponentPair(Fraction(13, 40), Fraction(11, 20)), pair_from_strings('13/40', '0.55'))
