'''
Small helper functions for parsing parameters and rendering reports.
'''

import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from .exceptions import InvalidParameterException

import logging
logger = logging.getLogger('psworkbench')


def parse_rational(text, name='value'):
    '''
    Turn "p/q", a decimal literal, an int or a Fraction into an exact Fraction.
    Decimal literals are taken literally, so "1.02" becomes 51/50.
    '''
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        # repr gives the shortest literal that reproduces the float
        text = repr(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidParameterException(name, text, "expected p/q or a decimal number")


def parse_integer(text, name='value'):
    '''
    Parse an integer given as "12345", "1e5" or "10**5".
    '''
    if isinstance(text, int):
        return text
    text = str(text).strip()
    if '**' in text:
        base, _, exponent = text.partition('**')
        return parse_integer(base, name) ** parse_integer(exponent, name)
    value = parse_rational(text, name)
    if value.denominator != 1:
        raise InvalidParameterException(name, text, "expected an integer")
    return value.numerator


def format_rational(value):
    '''
    Render an exact rational as "p/q", integers without denominator.
    '''
    return str(Fraction(value))


def format_float(value):
    return '{0:.17g}'.format(value)


def to_jsonable(obj):
    '''
    Recursively convert report data into plain JSON types.
    Fractions become "p/q" strings, complex numbers [re, im] pairs.
    '''
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(value) for value in obj]
    if hasattr(obj, 'as_dict'):
        return to_jsonable(obj.as_dict())
    return obj


def render_json(data):
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True) + '\n'


def _csv_cell(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return '{0}{1:+.17g}j'.format(format_float(value.real), value.imag)
    if value is None:
        return ''
    return str(value)


def render_csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(value) for value in row])
    return buffer.getvalue()


def emit(text, out=None):
    '''
    Write a rendered report to the given path, or to standard output.
    '''
    if out:
        with open(out, 'w') as f:
            f.write(text)
        logger.info("Report written to {0}".format(out))
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
