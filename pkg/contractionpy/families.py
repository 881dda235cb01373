"""
Named families of contractions, enumerated two ways.

filter    : brute force over all n^n maps, keeping what the definitions admit
construct : the closed forms (grid of K_p, convex-image idempotents, unions)
"""
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from contractionpy.transformations import (Transformation, compose, reversal, classify_many, ranks_of,
                                           idempotent_mask, regular_mask, rows_to_transformations)
from contractionpy.utils.exceptions import BadParameter, NotAMember, ScaleRefusal, UnsupportedMethod
from contractionpy.utils.misc import prefix_chunks, maps_with_prefix

tags = ['CT', 'OCT', 'ORCT', 'RegOCT', 'RegORCT', 'EOCT', 'EORCT', 'Kp', 'KpStar', 'Jp', 'Ep', 'Lnp', 'Mnp']
parametrized_tags = ['Kp', 'KpStar', 'Jp', 'Ep', 'Lnp', 'Mnp']
ambient_tags = ['CT', 'OCT', 'ORCT']

spec_prefixes = {
    'ct': 'CT',
    'oct': 'OCT',
    'orct': 'ORCT',
    'reg-oct': 'RegOCT',
    'reg-orct': 'RegORCT',
    'e-oct': 'EOCT',
    'e-orct': 'EORCT',
    'k': 'Kp',
    'k*': 'KpStar',
    'j': 'Jp',
    'e': 'Ep',
    'l': 'Lnp',
    'm': 'Mnp',
}
tag_prefixes = {tag: prefix for prefix, tag in spec_prefixes.items()}

default_scale_ceiling = 8
chunk_free_coordinates = 6


@dataclass(frozen=True)
class FamilyId:
    tag: str
    p: int = None

    def __post_init__(self):
        if self.tag not in tags:
            raise BadParameter(f'{self.tag} is not a family')
        if self.tag in parametrized_tags and self.p is None:
            raise BadParameter(f'{self.tag} needs a parameter p')
        if self.tag not in parametrized_tags and self.p is not None:
            raise BadParameter(f'{self.tag} takes no parameter')

    @classmethod
    def from_spec(cls, text):
        text = str(text).strip().lower()
        if ':' in text:
            prefix, p = text.split(':', maxsplit=1)
            if prefix not in spec_prefixes:
                raise BadParameter(f'{text} is not a family spec')
            try:
                p = int(p)
            except ValueError:
                raise BadParameter(f'{text} has a non-integer parameter')
            return cls(spec_prefixes[prefix], p)
        if text not in spec_prefixes:
            raise BadParameter(f'{text} is not a family spec')
        return cls(spec_prefixes[text])

    @property
    def spec(self):
        prefix = tag_prefixes[self.tag]
        return prefix if self.p is None else f'{prefix}:{self.p}'

    def check(self, n):
        if n < 1:
            raise BadParameter(f'n = {n} must be positive')
        if self.p is not None and not 1 <= self.p <= n:
            raise BadParameter(f'p = {self.p} is outside [1, {n}] for {self.spec}')

    def __str__(self):
        return self.spec


class FamilySet(object):
    """
        A finite set of transformations of one degree, kept in canonical order.

        ...

        Parameters
        ----------
        family : FamilyId or None
            None for ad hoc sets (closures, classes, ...)
        n : int
        elements : iterable of Transformation
        label : str, optional
            display name used when family is None
    """

    def __init__(self, family, n, elements, label=None):
        self.family = family
        self.n = n
        elements = sorted(set(elements))
        for alpha in elements:
            if alpha.degree != n:
                raise BadParameter(f'{alpha} has degree {alpha.degree}, expected {n}')
        self.elements = tuple(elements)
        self._label = label
        self._index = None

    @property
    def label(self):
        if self._label is not None:
            return self._label
        if self.family is not None:
            return self.family.spec
        return 'set'

    def index(self, alpha):
        if self._index is None:
            self._index = {beta: i for i, beta in enumerate(self.elements)}
        try:
            return self._index[alpha]
        except KeyError:
            raise NotAMember(f'{alpha} is not in {self.label}')

    def __contains__(self, alpha):
        try:
            self.index(alpha)
            return True
        except NotAMember:
            return False

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, item):
        return self.elements[item]

    def __eq__(self, other):
        if isinstance(other, FamilySet):
            return self.n == other.n and self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.elements))

    def as_set(self):
        return set(self.elements)

    def literals(self):
        return [alpha.literal for alpha in self.elements]

    def as_array(self):
        return np.array([alpha.images for alpha in self.elements], dtype=np.int16).reshape(len(self), self.n)

    def subset(self, predicate, label=None):
        return FamilySet(None, self.n, [a for a in self.elements if predicate(a)], label=label)

    def rank_slice(self, p):
        return self.subset(lambda a: a.rank == p, label=f'{self.label}|rank {p}')

    def __repr__(self):
        return f'FamilySet({self.label}, n={self.n}, {len(self)} elements)'


# constructors

def star(alpha):
    return compose(alpha, reversal(alpha.degree))


def reflect_image(alpha):
    """Reverse the order of alpha's image inside its own image set."""
    low, high = min(alpha.images), max(alpha.images)
    return Transformation(alpha.degree, tuple(low + high - v for v in alpha.images))


def grid_element(n, p, kernel_shift, image_shift):
    """
        Order-preserving element of K_p with kernel
        ({1..c+1}, c+2, ..., c+p-1, {c+p..n}) and image {1+r..p+r}.
    """
    if not 2 <= p <= n:
        raise BadParameter(f'grid elements need 2 <= p <= n, got p = {p}, n = {n}')
    for name, shift in (('kernel_shift', kernel_shift), ('image_shift', image_shift)):
        if not 0 <= shift <= n - p:
            raise BadParameter(f'{name} = {shift} is outside [0, {n - p}]')
    c, r = kernel_shift, image_shift
    return Transformation(n, tuple(min(max(x - c, 1), p) + r for x in range(1, n + 1)))


def grid_coordinates(alpha):
    """(kernel_shift, image_shift, orientation) of a rank >= 2 element of J_p."""
    p = alpha.rank
    if p < 2:
        raise BadParameter(f'{alpha} has rank {p}; the grid needs rank >= 2')
    blocks = alpha.kernel.blocks
    c = len(blocks[0]) - 1
    r = alpha.image[0] - 1
    plain = grid_element(alpha.degree, p, c, r) if c <= alpha.degree - p and r <= alpha.degree - p else None
    if plain == alpha:
        return c, r, '+'
    if plain is not None and reflect_image(plain) == alpha:
        return c, r, '-'
    raise BadParameter(f'{alpha} is not a grid element')


corners = ['eta', 'delta', 'tau', 'eta_star', 'delta_star', 'tau_star']


def corner(n, p, which):
    if n < 2 or not 2 <= p <= n - 1:
        raise BadParameter(f'corners need n >= 2 and 2 <= p <= n-1, got n = {n}, p = {p}')
    base = which[:-5] if which.endswith('_star') else which
    if which not in corners:
        raise BadParameter(f'{which} is not a corner')
    shifts = {'eta': (n - p, 0), 'delta': (0, 0), 'tau': (0, n - p)}
    alpha = grid_element(n, p, *shifts[base])
    if which.endswith('_star'):
        alpha = reflect_image(alpha)
    return alpha


def idempotent_from(n, i, j):
    """({1..i} -> i, i+1 -> i+1, ..., {i+j..n} -> i+j); rank and fix are j+1."""
    if i < 1 or j < 0 or i + j > n:
        raise BadParameter(f'need i >= 1, j >= 0, i+j <= n; got i = {i}, j = {j}, n = {n}')
    return Transformation(n, tuple(min(max(x, i), i + j) for x in range(1, n + 1)))


def class_of(alpha, family, relation):
    """
        Elements of family sharing alpha's image ('R') or kernel ('L').

        The labels follow the generating-set lemmas, where R_eta is the
        image class of eta and L_delta the kernel class of delta. Green's
        relations themselves are computed in contractionpy.greens.
    """
    if alpha not in family:
        raise NotAMember(f'{alpha} is not in {family.label}')
    if relation == 'R':
        key = alpha.image
        members = [beta for beta in family if beta.image == key]
    elif relation == 'L':
        key = alpha.kernel
        members = [beta for beta in family if beta.kernel == key]
    else:
        raise BadParameter(f'{relation} is not valid; use R or L')
    return FamilySet(None, family.n, members, label=f'{relation}-class of {alpha} in {family.label}')


def _k_elements(n, p):
    if p == 1:
        return [Transformation(n, (c,) * n) for c in range(1, n + 1)]
    return [grid_element(n, p, c, r) for c in range(n - p + 1) for r in range(n - p + 1)]


def _j_elements(n, p):
    ks = _k_elements(n, p)
    return ks + [star(alpha) for alpha in ks]


def _e_elements(n, p):
    return [idempotent_from(n, a, p - 1) for a in range(1, n - p + 2)]


def _construct(family, n):
    tag, p = family.tag, family.p
    if tag == 'Kp':
        elements = _k_elements(n, p)
    elif tag == 'KpStar':
        elements = [star(alpha) for alpha in _k_elements(n, p)]
    elif tag == 'Jp':
        elements = _j_elements(n, p)
    elif tag == 'Ep':
        elements = _e_elements(n, p)
    elif tag == 'Lnp':
        elements = [a for q in range(1, p + 1) for a in _k_elements(n, q)]
    elif tag == 'Mnp':
        elements = [a for q in range(1, p + 1) for a in _j_elements(n, q)]
    elif tag == 'RegOCT':
        elements = [a for q in range(1, n + 1) for a in _k_elements(n, q)]
    elif tag == 'RegORCT':
        elements = [a for q in range(1, n + 1) for a in _j_elements(n, q)]
    elif tag in ['EOCT', 'EORCT']:
        elements = [a for q in range(1, n + 1) for a in _e_elements(n, q)]
    else:
        raise UnsupportedMethod(f'{family.spec} has no constructive form; use method=filter')
    return elements


# filter oracle

def _filter_chunk(task):
    n, prefix, ambient = task
    rows = maps_with_prefix(n, prefix)
    flags = classify_many(rows)
    mask = flags['contraction']
    if ambient == 'OCT':
        mask &= flags['order_preserving']
    elif ambient == 'ORCT':
        mask &= flags['order_preserving'] | flags['order_reversing']
    return rows[mask]


def ambient_rows(n, ambient, jobs=1):
    """CT_n, OCT_n or ORCT_n as a lexicographically sorted (m, n) array."""
    prefixes = prefix_chunks(n, n - chunk_free_coordinates)
    tasks = [(n, prefix, ambient) for prefix in prefixes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(_filter_chunk, tasks))
    else:
        parts = [_filter_chunk(task) for task in tasks]
    return np.concatenate(parts, axis=0)


def _filter_rows(family, n, jobs):
    tag, p = family.tag, family.p
    if tag in ambient_tags:
        return ambient_rows(n, tag, jobs)
    if tag in ['EOCT', 'EORCT', 'Ep']:
        rows = ambient_rows(n, 'OCT' if tag == 'EOCT' else 'ORCT', jobs)
        rows = rows[idempotent_mask(rows)]
        if tag == 'Ep':
            rows = rows[ranks_of(rows) == p]
        return rows
    ambient = 'OCT' if tag in ['RegOCT', 'Kp', 'Lnp'] else 'ORCT'
    rows = ambient_rows(n, ambient, jobs)
    rows = rows[regular_mask(rows)]
    ranks = ranks_of(rows)
    if tag in ['Kp', 'Jp']:
        rows = rows[ranks == p]
    elif tag == 'KpStar':
        reversing = classify_many(rows)['order_reversing']
        rows = rows[(ranks == p) & reversing]
    elif tag in ['Lnp', 'Mnp']:
        rows = rows[ranks <= p]
    return rows


def enumerate_family(family, n, method='construct', jobs=1, scale_ceiling=default_scale_ceiling,
                     force_scale=False):
    """
        Enumerate a named family of degree n.

        Parameters
        ----------
        family : FamilyId or str
            a FamilyId or a spec string such as 'reg-oct' or 'k:3'
        n : int
        method : str
            'construct' or 'filter'
        jobs : int
            worker processes for the filter oracle
        scale_ceiling : int
            largest n the filter oracle runs without force_scale
        force_scale : bool

        Returns
        -------
        FamilySet
    """
    if isinstance(family, str):
        family = FamilyId.from_spec(family)
    family.check(n)
    if method == 'construct':
        elements = _construct(family, n)
    elif method == 'filter':
        if n > scale_ceiling:
            if not force_scale:
                raise ScaleRefusal(f'filtering {family.spec} at n = {n} means scanning {n}^{n} maps; '
                                   f'the ceiling is n = {scale_ceiling} (use --force-scale)')
            warnings.warn(f'filtering {n}^{n} maps for {family.spec} beyond the ceiling n = {scale_ceiling}')
        elements = rows_to_transformations(_filter_rows(family, n, jobs))
    else:
        raise UnsupportedMethod(f'{method} is not valid; use construct or filter')
    return FamilySet(family, n, elements)


def default_method(family):
    if isinstance(family, str):
        family = FamilyId.from_spec(family)
    return 'filter' if family.tag in ambient_tags else 'construct'
