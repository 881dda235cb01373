"""
Full transformations of the chain [n] = {1 < 2 < ... < n}.

Maps act on the right and products are read left to right:
x(alpha beta) = (x alpha) beta. Images are 1-based everywhere.
"""
import itertools
from dataclasses import dataclass

import numpy as np

from contractionpy.utils.exceptions import WrongLength, OutOfRange, DegreeMismatch
from contractionpy.utils.formatting import parse_int_list, format_int_list


@dataclass(frozen=True, order=True)
class Transformation:
    """
        A full map of [n] given by its image list.

        Instances are immutable and hashable. The ordering is the canonical
        one: by degree, then lexicographically on the images.

        ...

        Parameters
        ----------
        degree : int
            n
        images : tuple of int
            entry x-1 is x alpha

        Attributes
        ----------
        rank : int
            |Im alpha| (also called height)
        image : tuple
            sorted image set
        kernel : KernelPartition
        fix : int
            number of fixed points
    """
    degree: int
    images: tuple

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, 'images', images)
        if self.degree < 1:
            raise OutOfRange(f'degree {self.degree} must be positive')
        if len(images) != self.degree:
            raise WrongLength(f'{len(images)} images given for degree {self.degree}')
        for value in images:
            if not 1 <= value <= self.degree:
                raise OutOfRange(f'image {value} is outside [1, {self.degree}]')

    def __call__(self, x):
        return self.images[x - 1]

    def __mul__(self, other):
        return compose(self, other)

    def __len__(self):
        return self.degree

    @property
    def image(self):
        return tuple(sorted(set(self.images)))

    @property
    def rank(self):
        return len(set(self.images))

    @property
    def height(self):
        return self.rank

    @property
    def fix(self):
        return sum(1 for x, value in enumerate(self.images, start=1) if value == x)

    @property
    def kernel(self):
        return kernel_of(self.images)

    @property
    def literal(self):
        return format_int_list(self.images)

    def __str__(self):
        return self.literal

    def __repr__(self):
        return f'Transformation({self.literal})'


@dataclass(frozen=True)
class KernelPartition:
    """Ordered partition of [n]; blocks are sorted tuples ordered by least element."""
    degree: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in block)) for block in self.blocks)
        object.__setattr__(self, 'blocks', blocks)
        seen = [x for block in blocks for x in block]
        if any(len(block) == 0 for block in blocks):
            raise ValueError('kernel blocks must be nonempty')
        if sorted(seen) != list(range(1, self.degree + 1)):
            raise ValueError(f'blocks {blocks} do not partition [1, {self.degree}]')
        mins = [block[0] for block in blocks]
        if mins != sorted(mins):
            raise ValueError(f'blocks {blocks} are not ordered by least element')

    def __len__(self):
        return len(self.blocks)

    @property
    def labels(self):
        """Block index of every point 1..n."""
        labels = [0] * self.degree
        for i, block in enumerate(self.blocks):
            for x in block:
                labels[x - 1] = i
        return tuple(labels)

    def refines(self, other):
        """True if every block of self lies inside a block of other."""
        theirs = other.labels
        return all(len({theirs[x - 1] for x in block}) == 1 for block in self.blocks)

    def __str__(self):
        return '(' + ', '.join('{' + ','.join(map(str, b)) + '}' for b in self.blocks) + ')'


@dataclass(frozen=True)
class PropertyFlags:
    order_preserving: bool
    order_reversing: bool
    contraction: bool
    isometry: bool
    idempotent: bool
    order_decreasing: bool = False
    order_increasing: bool = False


@dataclass(frozen=True)
class Analysis:
    kernel: KernelPartition
    image: tuple
    rank: int
    fix: int

    @property
    def height(self):
        return self.rank

    @property
    def convex_image(self):
        return self.image[-1] - self.image[0] + 1 == len(self.image)


@dataclass(frozen=True)
class Transversal:
    points: tuple
    convex: bool
    admissible: bool


def make_transformation(n, images):
    return Transformation(n, tuple(images))


def kernel_of(images):
    classes = {}
    for x, value in enumerate(images, start=1):
        classes.setdefault(value, []).append(x)
    blocks = sorted(classes.values(), key=lambda block: block[0])
    return KernelPartition(len(images), tuple(tuple(b) for b in blocks))


def compose_images(a, b):
    """Raw tuple product: x -> b[a[x]] (1-based)."""
    return tuple(b[x - 1] for x in a)


def compose(alpha, beta):
    if alpha.degree != beta.degree:
        raise DegreeMismatch(f'cannot compose degree {alpha.degree} with degree {beta.degree}')
    return Transformation(alpha.degree, compose_images(alpha.images, beta.images))


def analyze(alpha):
    return Analysis(kernel=alpha.kernel, image=alpha.image, rank=alpha.rank, fix=alpha.fix)


def classify(alpha):
    images = alpha.images
    n = alpha.degree
    preserving = reversing = contraction = isometry = True
    for x, y in itertools.combinations(range(n), 2):
        d = images[y] - images[x]
        preserving &= d >= 0
        reversing &= d <= 0
        contraction &= abs(d) <= y - x
        isometry &= abs(d) == y - x
    idempotent = all(images[v - 1] == v for v in images)
    decreasing = all(v <= x for x, v in enumerate(images, start=1))
    increasing = all(v >= x for x, v in enumerate(images, start=1))
    return PropertyFlags(order_preserving=preserving, order_reversing=reversing,
                         contraction=contraction, isometry=isometry, idempotent=idempotent,
                         order_decreasing=decreasing, order_increasing=increasing)


def identity(n):
    return Transformation(n, tuple(range(1, n + 1)))


def reversal(n):
    return Transformation(n, tuple(range(n, 0, -1)))


def constant(n, c):
    if not 1 <= c <= n:
        raise OutOfRange(f'constant {c} is outside [1, {n}]')
    return Transformation(n, (c,) * n)


def special(n, kind, c=None):
    if kind == 'identity':
        return identity(n)
    elif kind == 'reversal':
        return reversal(n)
    elif kind == 'constant':
        if c is None:
            raise OutOfRange('constant needs a value c')
        return constant(n, c)
    else:
        raise ValueError(f'{kind} is not valid')


def _is_contraction_map(images):
    return all(abs(images[y] - images[x]) <= y - x
               for x, y in itertools.combinations(range(len(images)), 2))


def transversals(kernel):
    """Every transversal of the kernel, with its convexity and admissibility."""
    out = []
    for points in itertools.product(*kernel.blocks):
        ordered = tuple(sorted(points))
        convex = ordered[-1] - ordered[0] + 1 == len(ordered)
        induced = [0] * kernel.degree
        for block, t in zip(kernel.blocks, points):
            for x in block:
                induced[x - 1] = t
        out.append(Transversal(points=ordered, convex=convex, admissible=_is_contraction_map(induced)))
    return out


def is_regular_form(alpha):
    """Monotone contraction whose kernel has a convex admissible transversal."""
    flags = classify(alpha)
    if not flags.contraction or not (flags.order_preserving or flags.order_reversing):
        return False
    return any(t.convex and t.admissible for t in transversals(alpha.kernel))


def parse_transformation(text):
    values = parse_int_list(text)
    return make_transformation(len(values), values)


def format_transformation(alpha):
    return alpha.literal


# vectorised helpers over (m, n) arrays of 1-based images

def classify_many(rows):
    """Literal pairwise predicates for every row; returns a dict of boolean arrays."""
    rows = np.asarray(rows, dtype=np.int16)
    m, n = rows.shape
    preserving = np.ones(m, dtype=bool)
    reversing = np.ones(m, dtype=bool)
    contraction = np.ones(m, dtype=bool)
    isometry = np.ones(m, dtype=bool)
    for x, y in itertools.combinations(range(n), 2):
        d = rows[:, y] - rows[:, x]
        preserving &= d >= 0
        reversing &= d <= 0
        contraction &= np.abs(d) <= y - x
        isometry &= np.abs(d) == y - x
    return {
        'order_preserving': preserving,
        'order_reversing': reversing,
        'contraction': contraction,
        'isometry': isometry,
        'idempotent': idempotent_mask(rows),
    }


def ranks_of(rows):
    rows = np.sort(np.asarray(rows), axis=1)
    if rows.shape[1] == 0:
        return np.zeros(len(rows), dtype=int)
    return (np.diff(rows, axis=1) != 0).sum(axis=1) + 1


def idempotent_mask(rows):
    zero_based = np.asarray(rows, dtype=np.intp) - 1
    if len(zero_based) == 0:
        return np.zeros(0, dtype=bool)
    squared = np.take_along_axis(zero_based, zero_based, axis=1)
    return np.all(squared == zero_based, axis=1)


def regular_mask(rows):
    """Rows alpha with some row beta such that alpha beta alpha = alpha."""
    zero_based = np.asarray(rows, dtype=np.intp) - 1
    mask = np.zeros(len(zero_based), dtype=bool)
    for i, a in enumerate(zero_based):
        then_beta = zero_based[:, a]
        mask[i] = np.any(np.all(a[then_beta] == a, axis=1))
    return mask


def rows_to_transformations(rows):
    rows = np.asarray(rows)
    if rows.ndim != 2:
        return []
    n = rows.shape[1]
    return [Transformation(n, tuple(int(v) for v in row)) for row in rows]
