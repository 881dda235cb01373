import unittest

import numpy as np

from contractionpy.families import FamilyId, enumerate_family, star, reflect_image
from contractionpy.genrank import closure
from contractionpy.transformations import Transformation, classify, parse_transformation, classify_many

seed = 20240917
samples = 10 ** 4


def random_maps(rng, count, low=2, high=7):
    for _ in range(count):
        n = int(rng.integers(low, high + 1))
        yield Transformation(n, tuple(int(v) for v in rng.integers(1, n + 1, size=n)))


def random_contractions(rng, count, n):
    """Random order-preserving contractions: walks with steps 0 or 1 from a random start."""
    for _ in range(count):
        steps = rng.integers(0, 2, size=n - 1)
        top = int(steps.sum())
        start = int(rng.integers(1, n - top + 1))
        images = start + np.concatenate([[0], np.cumsum(steps)])
        alpha = Transformation(n, tuple(int(v) for v in images))
        yield alpha if rng.integers(0, 2) == 0 else star(alpha)


class TestAlgebraicLaws(unittest.TestCase):
    def test_associativity(self):
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            n = int(rng.integers(1, 8))
            a, b, c = [Transformation(n, tuple(int(v) for v in rng.integers(1, n + 1, size=n))) for _ in range(3)]
            self.assertEqual((a * b) * c, a * (b * c))

    def test_rank_and_invariants(self):
        rng = np.random.default_rng(seed + 1)
        maps = list(random_maps(rng, 2 * samples))
        for a, b in zip(maps[::2], maps[1::2]):
            if a.degree != b.degree:
                continue
            ab = a * b
            self.assertLessEqual(ab.rank, min(a.rank, b.rank))
            self.assertTrue(a.kernel.refines(ab.kernel))
            self.assertTrue(set(ab.image) <= set(b.image))

    def test_literal_round_trip(self):
        rng = np.random.default_rng(seed + 2)
        for alpha in random_maps(rng, samples, low=1):
            self.assertEqual(parse_transformation(alpha.literal), alpha)


class TestContractionLaws(unittest.TestCase):
    def test_closed_under_composition(self):
        rng = np.random.default_rng(seed + 3)
        for n in range(2, 8):
            maps = list(random_contractions(rng, samples // 5, n))
            for a, b in zip(maps[::2], maps[1::2]):
                self.assertTrue(classify(a).contraction)
                flags = classify(a * b)
                self.assertTrue(flags.contraction)
                self.assertTrue(flags.order_preserving or flags.order_reversing)

    def test_orientation(self):
        rng = np.random.default_rng(seed + 4)
        for alpha in random_contractions(rng, samples, 6):
            if alpha.rank < 2:
                continue
            preserving = classify(alpha).order_preserving
            self.assertEqual(classify(star(alpha)).order_reversing, preserving)
            self.assertEqual(classify(reflect_image(alpha)).order_reversing, preserving)
            self.assertEqual(star(star(alpha)), alpha)
            self.assertEqual(reflect_image(alpha).image, alpha.image)

    def test_vectorised_agrees(self):
        rng = np.random.default_rng(seed + 5)
        rows = rng.integers(1, 6, size=(samples, 5))
        flags = classify_many(rows)
        for i in rng.choice(samples, size=500, replace=False):
            scalar = classify(Transformation(5, tuple(int(v) for v in rows[i])))
            self.assertEqual(bool(flags['contraction'][i]), scalar.contraction)
            self.assertEqual(bool(flags['order_preserving'][i]), scalar.order_preserving)


class TestRegularProducts(unittest.TestCase):
    def test_reg_orct_closed(self):
        rng = np.random.default_rng(seed + 6)
        for n in range(3, 7):
            S = enumerate_family(FamilyId('RegORCT'), n)
            members = S.as_set()
            picks = rng.integers(0, len(S), size=(samples // 4, 2))
            for i, j in picks:
                self.assertIn(S[int(i)] * S[int(j)], members)


def is_idempotent_by_fixed_image(alpha):
    return all(alpha.images[y - 1] == y for y in alpha.image)


class TestClosureLaws(unittest.TestCase):
    def test_closure_idempotent(self):
        rng = np.random.default_rng(seed + 7)
        for _ in range(samples):
            n = int(rng.integers(2, 5))
            gens = list(random_contractions(rng, int(rng.integers(1, 4)), n))
            once = closure(gens)
            self.assertTrue(set(gens) <= once.as_set())
            self.assertEqual(closure(once).as_set(), once.as_set())

    def test_idempotency_criterion(self):
        rng = np.random.default_rng(seed + 8)
        for alpha in random_contractions(rng, samples, 6):
            self.assertEqual(alpha * alpha == alpha, is_idempotent_by_fixed_image(alpha))


class TestExhaustiveSmallDegrees(unittest.TestCase):
    def test_laws_on_orct(self):
        for n in range(1, 5):
            orct = list(enumerate_family('orct', n, method='filter'))
            members = set(orct)
            for a in orct:
                self.assertEqual(star(star(a)), a)
                self.assertIn(star(a), members)
                self.assertEqual(a * a == a, is_idempotent_by_fixed_image(a))
                for b in orct:
                    ab = a * b
                    self.assertIn(ab, members)
                    self.assertLessEqual(ab.rank, min(a.rank, b.rank))

    def test_associativity_on_orct_4(self):
        orct = list(enumerate_family('orct', 4, method='filter'))
        products = {(a, b): a * b for a in orct for b in orct}
        for a in orct:
            for b in orct:
                ab = products[(a, b)]
                for c in orct:
                    self.assertEqual(products[(ab, c)], products[(a, products[(b, c)])])

    def test_closure_idempotent_on_pairs(self):
        orct = list(enumerate_family('orct', 4, method='filter'))
        for i, a in enumerate(orct):
            for b in orct[i:]:
                once = closure([a, b])
                self.assertEqual(closure(once).as_set(), once.as_set())


if __name__ == '__main__':
    unittest.main()
