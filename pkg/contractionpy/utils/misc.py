import os
import numpy as np


def mkdir_if_not_exist(path):
    from pathlib import Path
    Path(path).mkdir(parents=True, exist_ok=True)
    return path


def sanitize_filename(name):
    keep = []
    for char in str(name):
        if char.isalnum() or char in '-_.@':
            keep.append(char)
        else:
            keep.append('_')
    return ''.join(keep)


def cartesian_rows(*axes, dtype=np.int8):
    """
        Rows of the cartesian product of the given axes, in lexicographic order.

        cartesian_rows([1, 2], [1, 2]) -> [[1, 1], [1, 2], [2, 1], [2, 2]]
    """
    axes = [np.asarray(axis, dtype=dtype) for axis in axes]
    grids = np.meshgrid(*axes, indexing='ij')
    return np.stack(grids, axis=-1).reshape(-1, len(axes))


def prefix_chunks(n, prefix_length):
    """Leading prefixes that split the n^n space of maps into equal chunks."""
    prefix_length = max(0, min(prefix_length, n))
    values = range(1, n + 1)
    if prefix_length == 0:
        return [()]
    rows = cartesian_rows(*[values] * prefix_length)
    return [tuple(int(v) for v in row) for row in rows]


def maps_with_prefix(n, prefix):
    axes = [[v] for v in prefix] + [range(1, n + 1)] * (n - len(prefix))
    return cartesian_rows(*axes)


def savetxt(fullpath, text):
    folder = os.path.dirname(fullpath)
    if folder:
        mkdir_if_not_exist(folder)
    tmp = f'{fullpath}.tmp'
    with open(tmp, 'w') as f:
        f.write(text)
    os.replace(tmp, fullpath)
    return fullpath
