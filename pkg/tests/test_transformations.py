import unittest

from contractionpy.transformations import (Transformation, make_transformation, compose, analyze, classify,
                                           special, identity, reversal, parse_transformation,
                                           format_transformation, is_regular_form, kernel_of, classify_many,
                                           ranks_of, idempotent_mask, rows_to_transformations)
from contractionpy.utils.exceptions import WrongLength, OutOfRange, DegreeMismatch, LiteralSyntaxError
from contractionpy.utils.misc import cartesian_rows

t = parse_transformation


class TestTransformation(unittest.TestCase):
    def test_make(self):
        alpha = make_transformation(4, [1, 1, 2, 3])
        self.assertEqual(alpha.rank, 3)
        self.assertEqual(alpha.degree, 4)
        self.assertEqual(alpha(4), 3)
        self.assertEqual(alpha.images, (1, 1, 2, 3))

    def test_invalid(self):
        self.assertRaises(WrongLength, make_transformation, 3, [1, 2])
        self.assertRaises(OutOfRange, make_transformation, 3, [0, 1, 2])
        self.assertRaises(OutOfRange, make_transformation, 3, [1, 2, 4])
        self.assertRaises(OutOfRange, make_transformation, 0, [])

    def test_canonical_order(self):
        elements = [t('[2,2,3,4]'), t('[1,2,2,2]'), t('[1,1,2,3]')]
        self.assertEqual(sorted(elements), [t('[1,1,2,3]'), t('[1,2,2,2]'), t('[2,2,3,4]')])

    def test_hashable(self):
        self.assertEqual(len({t('[1,2,2]'), t('[1,2,2]'), t('[1,1,2]')}), 2)


class TestCompose(unittest.TestCase):
    def test_tau_eta_is_delta(self):
        tau, eta, delta = t('[3,4,4,4]'), t('[1,1,1,2]'), t('[1,2,2,2]')
        self.assertEqual(compose(tau, eta), delta)
        self.assertEqual(tau * eta, delta)
        self.assertEqual(eta * tau, t('[3,3,3,4]'))

    def test_identity(self):
        alpha = t('[2,3,3,4]')
        self.assertEqual(identity(4) * alpha, alpha)
        self.assertEqual(alpha * identity(4), alpha)

    def test_degree_mismatch(self):
        self.assertRaises(DegreeMismatch, compose, t('[1,2]'), t('[1,2,3]'))


class TestAnalyze(unittest.TestCase):
    def test_analyze(self):
        result = analyze(t('[1,1,2,3]'))
        self.assertEqual(result.kernel.blocks, ((1, 2), (3,), (4,)))
        self.assertEqual(result.image, (1, 2, 3))
        self.assertEqual(result.rank, 3)
        self.assertEqual(result.fix, 1)
        self.assertEqual(result.height, 3)
        self.assertTrue(result.convex_image)

    def test_kernel_refines(self):
        fine = kernel_of((1, 2, 3, 4))
        coarse = kernel_of((1, 1, 2, 2))
        self.assertTrue(fine.refines(coarse))
        self.assertFalse(coarse.refines(fine))
        self.assertEqual(coarse.labels, (0, 0, 1, 1))


class TestClassify(unittest.TestCase):
    def test_order_preserving_contraction(self):
        flags = classify(t('[1,1,2,3]'))
        self.assertTrue(flags.order_preserving)
        self.assertFalse(flags.order_reversing)
        self.assertTrue(flags.contraction)
        self.assertFalse(flags.isometry)
        self.assertFalse(flags.idempotent)
        self.assertTrue(flags.order_decreasing)
        self.assertFalse(flags.order_increasing)

    def test_reversal(self):
        flags = classify(reversal(4))
        self.assertTrue(flags.order_reversing)
        self.assertFalse(flags.order_preserving)
        self.assertTrue(flags.contraction)
        self.assertTrue(flags.isometry)
        self.assertFalse(flags.idempotent)

    def test_not_contraction(self):
        flags = classify(t('[1,3,3,3]'))
        self.assertTrue(flags.order_preserving)
        self.assertFalse(flags.contraction)

    def test_idempotent(self):
        self.assertTrue(classify(t('[2,2,3,3]')).idempotent)
        self.assertTrue(classify(identity(3)).idempotent)

    def test_special(self):
        self.assertEqual(special(3, 'identity'), t('[1,2,3]'))
        self.assertEqual(special(3, 'reversal'), t('[3,2,1]'))
        self.assertEqual(special(3, 'constant', 2), t('[2,2,2]'))
        self.assertRaises(OutOfRange, special, 4, 'constant', 5)
        self.assertRaises(ValueError, special, 4, 'shift')


class TestRegularForm(unittest.TestCase):
    def test_regular_form(self):
        self.assertTrue(is_regular_form(t('[1,1,2,3]')))
        self.assertTrue(is_regular_form(t('[1,2,2,2]')))
        self.assertTrue(is_regular_form(t('[4,3,2,2]')))
        self.assertFalse(is_regular_form(t('[1,2,2,3]')))
        self.assertFalse(is_regular_form(t('[2,3,3,4]')))
        self.assertFalse(is_regular_form(t('[1,3,3,3]')))


class TestLiteral(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(t('[1,2,2,2]'), Transformation(4, (1, 2, 2, 2)))
        self.assertEqual(t(' [ 1, 2 ,2] '), Transformation(3, (1, 2, 2)))

    def test_format(self):
        self.assertEqual(format_transformation(t('[2,2,3,4]')), '[2,2,3,4]')
        self.assertEqual(str(t('[2,1]')), '[2,1]')

    def test_errors(self):
        self.assertRaises(LiteralSyntaxError, t, '1,2,3')
        self.assertRaises(LiteralSyntaxError, t, '[1,,2]')
        self.assertRaises(LiteralSyntaxError, t, '[]')
        self.assertRaises(OutOfRange, t, '[1,5]')


class TestVectorised(unittest.TestCase):
    def test_against_scalar(self):
        rows = cartesian_rows(*[range(1, 4)] * 3)
        self.assertEqual(rows.shape, (27, 3))
        flags = classify_many(rows)
        ranks = ranks_of(rows)
        idempotent = idempotent_mask(rows)
        for i, alpha in enumerate(rows_to_transformations(rows)):
            scalar = classify(alpha)
            self.assertEqual(bool(flags['order_preserving'][i]), scalar.order_preserving)
            self.assertEqual(bool(flags['order_reversing'][i]), scalar.order_reversing)
            self.assertEqual(bool(flags['contraction'][i]), scalar.contraction)
            self.assertEqual(bool(flags['isometry'][i]), scalar.isometry)
            self.assertEqual(bool(idempotent[i]), scalar.idempotent)
            self.assertEqual(int(ranks[i]), alpha.rank)


if __name__ == '__main__':
    unittest.main()
