'''
    Test cases for the configuration file handling.
'''

import logging
import os
import shutil
import tempfile
import unittest
from unittest import mock

from psworkbench import config

from . import rootdir, log_level
from .utils import load_test_config


class Defaults(unittest.TestCase):

    def tearDown(self):
        logging.getLogger('psworkbench').setLevel(log_level)

    def test_missing_file(self):
        cfg = config.read_config('/nonexistent/psworkbench.ini')
        self.assertEqual(65536, cfg.getint('Scan', 'segment_size'))
        self.assertEqual('first', cfg.get('Scan', 'witnesses'))
        self.assertTrue(config.check_config(cfg))

    def test_test_file(self):
        cfg = load_test_config()
        self.assertEqual(4096, cfg.getint('Scan', 'segment_size'))
        self.assertEqual('/tmp/psworkbench_test.lock', cfg.get('Execution', 'pidfile'))

    def test_policy(self):
        policy = config.precision_policy(load_test_config())
        self.assertEqual({'base_digits': 30, 'max_digits': 480, 'tolerance': 1e-12, 'exact_fallback': True}, policy)


class PrecisionCap(unittest.TestCase):

    def tearDown(self):
        logging.getLogger('psworkbench').setLevel(log_level)

    def test_environment(self):
        with mock.patch.dict(os.environ, {config.PRECISION_CAP_ENV: '900'}):
            cfg = config.read_config(rootdir + "workbench.cfg")
        self.assertEqual(900, cfg.getint('Precision', 'max_digits'))

    def test_argument(self):
        cfg = config.read_config(rootdir + "workbench.cfg", override_cap=120)
        self.assertEqual(120, cfg.getint('Precision', 'max_digits'))


class Consistency(unittest.TestCase):

    def setUp(self):
        self.config = load_test_config()

    def _broken(self, section, key, value):
        self.config[section][key] = value
        self.assertFalse(config.check_config(self.config), (section, key, value))

    def test_cap_below_base(self):
        self._broken('Precision', 'max_digits', '10')

    def test_tolerance(self):
        self._broken('Precision', 'boundary_tolerance', '2')

    def test_workers(self):
        self._broken('Scan', 'workers', '0')

    def test_witnesses(self):
        self._broken('Scan', 'witnesses', 'some')

    def test_sieve_argument(self):
        self._broken('Sieve', 'lower_bound_s', '3.5')

    def test_malformed(self):
        self._broken('Scan', 'segment_size', 'many')


class Creation(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp() + os.sep

    def tearDown(self):
        shutil.rmtree(self.tmpdir)
        logging.getLogger('psworkbench').setLevel(log_level)

    def test_create(self):
        fname = self.tmpdir + 'etc/psworkbench/workbench.ini'
        self.assertFalse(config.has_config(fname))
        self.assertTrue(config.create_config(fname))
        self.assertTrue(config.has_config(fname))
        cfg = config.read_config(fname)
        self.assertTrue(config.check_config(cfg))
        for key, value in config.DEFAULT_SETTINGS['Scan'].items():
            self.assertEqual(value, cfg.get('Scan', key))
