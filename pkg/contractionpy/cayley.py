import numpy as np

ZERO_INDEX = -1


class CayleyTable(object):
    """
        Multiplication table of a finite set of transformations.

        table[i][j] is the index of elements[i] * elements[j] (i first, then j).
        Products outside the set are stored as ZERO_INDEX. With rees_rank = p,
        products of rank below p are stored as ZERO_INDEX as well, which is
        the zero of the Rees quotient; only products outside the set that keep
        rank p make the table non-closed.

        ...

        Parameters
        ----------
        elements : sequence of Transformation
            canonical order is kept; indices refer to it
        rees_rank : int, optional

        Attributes
        ----------
        closed : bool
        witness : tuple or None
            (i, j) of a product that left the set
    """

    def __init__(self, elements, rees_rank=None):
        self.elements = tuple(elements)
        self.rees_rank = rees_rank
        self.size = len(self.elements)
        self.index = {alpha: i for i, alpha in enumerate(self.elements)}
        self.closed = True
        self.witness = None
        self.table = self._build()

    def _build(self):
        if self.size == 0:
            return []
        lookup = {alpha.images: i for alpha, i in self.index.items()}
        zero_based = np.array([alpha.images for alpha in self.elements], dtype=np.intp) - 1
        table = []
        for i, a in enumerate(zero_based):
            products = zero_based[:, a] + 1
            if self.rees_rank is not None:
                ranks = (np.diff(np.sort(products, axis=1), axis=1) != 0).sum(axis=1) + 1
            row = []
            for j, prod in enumerate(products.tolist()):
                if self.rees_rank is not None and ranks[j] < self.rees_rank:
                    row.append(ZERO_INDEX)
                    continue
                k = lookup.get(tuple(prod), ZERO_INDEX)
                if k == ZERO_INDEX and self.closed:
                    self.closed = False
                    self.witness = (i, j)
                row.append(k)
            table.append(row)
        return table

    def __len__(self):
        return self.size

    def product(self, i, j):
        return self.table[i][j]

    def saturate(self, generators):
        """
            Indices reached from the generators by right multiplication.

            Returns
            -------
            (reached, hit_zero) : (list of int, bool)
        """
        table = self.table
        seen = [False] * self.size
        reached = []
        for g in generators:
            if not seen[g]:
                seen[g] = True
                reached.append(g)
        hit_zero = False
        position = 0
        while position < len(reached):
            row = table[reached[position]]
            position += 1
            for g in generators:
                k = row[g]
                if k < 0:
                    hit_zero = True
                elif not seen[k]:
                    seen[k] = True
                    reached.append(k)
        return reached, hit_zero

    def generates_all(self, generators):
        reached, _ = self.saturate(generators)
        return len(reached) == self.size

    def right_ideal(self, i):
        """Indices of alpha S^1."""
        return frozenset([i] + [k for k in self.table[i] if k >= 0])

    def left_ideal(self, i):
        """Indices of S^1 alpha."""
        return frozenset([i] + [row[i] for row in self.table if row[i] >= 0])

    def decomposable(self):
        """Indices k with k = i * j for some i, j both different from k."""
        out = set()
        for i, row in enumerate(self.table):
            for j, k in enumerate(row):
                if k >= 0 and i != k and j != k:
                    out.add(k)
        return out
