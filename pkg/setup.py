#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

from psworkbench import VERSION

with open('requirements.txt') as f:
    required = f.read().splitlines()

setup(
    name = 'psworkbench',
    version = VERSION,
    license='AGPL',
    description = 'Exponent pair calculus, sieve weights and a desk-scale scanner for [p^c] + [m^c] = N.',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10'
    ],

    install_requires=required,
    python_requires='>=3.8',
    packages = find_packages(),
    package_data = {'psworkbench': ['tests/workbench.cfg']},
    entry_points={
        'console_scripts': [
            'psworkbench = psworkbench.cmdline:console_script',
        ],
    }
)
