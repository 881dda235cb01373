import re

from contractionpy.utils.exceptions import LiteralSyntaxError

_literal_pattern = re.compile(r'^\[\s*-?\d+(\s*,\s*-?\d+)*\s*\]$')
_range_pattern = re.compile(r'^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$')


def str_to_bool(value):
    if isinstance(value, bool):
        return value
    true_cases = ['true', '1', 'yes', 'on']
    false_cases = ['false', '0', 'no', 'off', '']
    text = str(value).strip().lower()
    if text in true_cases:
        return True
    elif text in false_cases:
        return False
    else:
        raise ValueError(f'{value} is not a boolean')


def parse_int_list(text):
    """Parse the literal grammar [i1,i2,...,in] into a list of ints."""
    text = str(text).strip()
    if not _literal_pattern.match(text):
        raise LiteralSyntaxError(f'{text!r} is not a transformation literal')
    inner = text[1:-1]
    return [int(item) for item in inner.split(',')]


def format_int_list(values):
    return '[' + ','.join(str(int(v)) for v in values) + ']'


def parse_n_range(text):
    """'5' -> range(5, 6); '1..7' -> range(1, 8)."""
    match = _range_pattern.match(str(text))
    if match is None:
        raise ValueError(f'{text!r} is not a range of the form A..B')
    start = int(match.group(1))
    stop = int(match.group(2)) if match.group(2) is not None else start
    if start < 1 or stop < start:
        raise ValueError(f'{text!r} is an empty or non-positive range')
    return range(start, stop + 1)


def split_csv(text):
    return [item.strip() for item in str(text).split(',') if item.strip()]


def lines_to_text(*lines):
    return '\n'.join([str(t) for t in lines])
