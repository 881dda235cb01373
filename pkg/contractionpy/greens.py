"""
Green's relations on a FamilySet.

With maps acting on the right, S^1 alpha collects maps whose image lies in
Im alpha and alpha S^1 collects maps whose kernel is coarser than ker alpha.
In a regular subsemigroup of T_n this makes R the kernel equivalence and L the
image equivalence; greens_by_invariants uses exactly that pairing and
greens_abstract recomputes both from principal ideals.
"""
from dataclasses import dataclass, field

from contractionpy.cayley import CayleyTable
from contractionpy.families import FamilySet
from contractionpy.transformations import regular_mask
from contractionpy.utils.exceptions import NotClosed


class UnionFind(object):
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _partition_by(keys):
    groups = {}
    for i, key in enumerate(keys):
        groups.setdefault(key, []).append(i)
    return tuple(sorted(tuple(g) for g in groups.values()))


def _join(size, *partitions):
    uf = UnionFind(size)
    for partition in partitions:
        for block in partition:
            for i in block[1:]:
                uf.union(block[0], i)
    return _partition_by([uf.find(i) for i in range(size)])


def _meet(size, first, second):
    label_a, label_b = [0] * size, [0] * size
    for k, block in enumerate(first):
        for i in block:
            label_a[i] = k
    for k, block in enumerate(second):
        for i in block:
            label_b[i] = k
    return _partition_by(list(zip(label_a, label_b)))


@dataclass(frozen=True)
class GreensStructure:
    """
        Partitions of base's element indices into R, L, H and D classes.

        Classes are sorted tuples of indices into base.elements, listed by
        least index.
    """
    base: FamilySet
    r_classes: tuple
    l_classes: tuple
    h_classes: tuple
    d_classes: tuple
    method: str = 'invariants'

    def classes(self, relation):
        return {'R': self.r_classes, 'L': self.l_classes, 'H': self.h_classes, 'D': self.d_classes}[relation]

    def class_sets(self, relation):
        return [FamilySet(None, self.base.n, [self.base[i] for i in block], label=f'{relation}-class')
                for block in self.classes(relation)]

    def related(self, alpha, beta, relation):
        i, j = self.base.index(alpha), self.base.index(beta)
        return any(i in block and j in block for block in self.classes(relation))

    def counts(self):
        return {relation: len(self.classes(relation)) for relation in 'RLHD'}


def greens_by_invariants(S):
    size = len(S)
    kernels = _partition_by([alpha.kernel for alpha in S])
    images = _partition_by([alpha.image for alpha in S])
    h_classes = _meet(size, kernels, images)
    d_classes = _join(size, kernels, images)
    return GreensStructure(base=S, r_classes=kernels, l_classes=images, h_classes=h_classes,
                           d_classes=d_classes, method='invariants')


def _closed_table(S):
    table = CayleyTable(S.elements)
    if not table.closed:
        i, j = table.witness
        raise NotClosed(f'{S[i]} * {S[j]} is not in {S.label}', witness=(S[i], S[j]))
    return table


def greens_abstract(S):
    """Green's relations from principal ideals, identity adjoined (S^1)."""
    table = _closed_table(S)
    size = len(S)
    r_classes = _partition_by([table.right_ideal(i) for i in range(size)])
    l_classes = _partition_by([table.left_ideal(i) for i in range(size)])
    h_classes = _meet(size, r_classes, l_classes)
    d_classes = _join(size, r_classes, l_classes)
    return GreensStructure(base=S, r_classes=r_classes, l_classes=l_classes, h_classes=h_classes,
                           d_classes=d_classes, method='abstract')


@dataclass(frozen=True)
class LemmaCheck:
    """How the abstract R and L compare with the kernel and image partitions."""
    r_is_kernel: bool
    l_is_image: bool
    r_is_image: bool
    l_is_kernel: bool

    @property
    def holds(self):
        return self.r_is_kernel and self.l_is_image

    @property
    def swapped_labels_hold(self):
        return self.r_is_image and self.l_is_kernel


def lemma_check(S):
    abstract = greens_abstract(S)
    invariants = greens_by_invariants(S)
    return LemmaCheck(r_is_kernel=abstract.r_classes == invariants.r_classes,
                      l_is_image=abstract.l_classes == invariants.l_classes,
                      r_is_image=abstract.r_classes == invariants.l_classes,
                      l_is_kernel=abstract.l_classes == invariants.r_classes)


def regular_elements(S):
    if len(S) == 0:
        return S
    mask = regular_mask(S.as_array())
    return FamilySet(None, S.n, [alpha for alpha, keep in zip(S, mask) if keep],
                     label=f'Reg({S.label})')


@dataclass
class StructureReport:
    closed: bool
    all_regular: bool
    l_unipotent: bool
    idempotent_count: int
    witnesses: list = field(default_factory=list)

    def to_dict(self):
        return {
            'closed': self.closed,
            'all_regular': self.all_regular,
            'l_unipotent': self.l_unipotent,
            'idempotent_count': self.idempotent_count,
            'witnesses': [{'flag': flag, 'elements': [a.literal for a in elements]}
                          for flag, elements in self.witnesses],
            'ideals': 'principal ideals taken in S^1',
        }


def structure_report(S):
    witnesses = []
    table = CayleyTable(S.elements)
    closed = table.closed
    if not closed:
        i, j = table.witness
        witnesses.append(('closed', (S[i], S[j])))

    regular = regular_elements(S)
    all_regular = len(regular) == len(S)
    if not all_regular:
        witnesses.append(('all_regular', tuple(a for a in S if a not in regular)))

    idempotents = [alpha for alpha in S if alpha * alpha == alpha]
    l_unipotent = True
    for block in greens_by_invariants(S).l_classes:
        members = [S[i] for i in block]
        count = sum(1 for alpha in members if alpha * alpha == alpha)
        if count != 1:
            if l_unipotent:
                witnesses.append(('l_unipotent', tuple(members)))
            l_unipotent = False
    return StructureReport(closed=closed, all_regular=all_regular, l_unipotent=l_unipotent,
                           idempotent_count=len(idempotents), witnesses=witnesses)
