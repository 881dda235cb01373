import unittest

from contractionpy.families import FamilyId, FamilySet, corner, enumerate_family
from contractionpy.genrank import (ZERO, PLAIN, rees, Word, ReesQuotient, quotient_q, quotient_w, closure,
                                   rees_closure, generates, is_irredundant, factorize, indecomposables, min_rank,
                                   RankCertificate, explicit_genset, inclusion_check, remark_checks,
                                   two_letter_factorizations)
from contractionpy.transformations import parse_transformation as t, identity
from contractionpy.utils.exceptions import BadParameter, DegreeMismatch, NotAMember


def family(spec, n):
    return enumerate_family(spec, n)


class TestClosure(unittest.TestCase):
    def test_closure_contains_delta(self):
        eta, tau = corner(4, 2, 'eta'), corner(4, 2, 'tau')
        self.assertIn(corner(4, 2, 'delta'), closure([eta, tau]))

    def test_closed_family(self):
        S = family('reg-oct', 4)
        self.assertEqual(closure(S).as_set(), S.as_set())

    def test_rees_closure(self):
        eta, tau = corner(4, 2, 'eta'), corner(4, 2, 'tau')
        result = rees_closure([eta, tau], 2)
        self.assertTrue(result.reached_zero)
        self.assertEqual(result.carrier.literals(), ['[1,1,1,2]', '[1,2,2,2]', '[3,3,3,4]', '[3,4,4,4]'])

    def test_errors(self):
        self.assertRaises(BadParameter, closure, [])
        self.assertRaises(DegreeMismatch, closure, [t('[1,1]'), t('[1,1,1]')])
        self.assertRaises(BadParameter, rees_closure, [t('[1,1,1]')], 2)


class TestRees(unittest.TestCase):
    def test_product(self):
        Q = quotient_q(4, 2)
        eta, tau, delta = corner(4, 2, 'eta'), corner(4, 2, 'tau'), corner(4, 2, 'delta')
        self.assertEqual(len(Q), 9)
        self.assertEqual(Q.product(tau, eta), delta)
        self.assertIs(Q.product(eta, eta), ZERO)
        self.assertIs(Q.product(ZERO, eta), ZERO)
        self.assertIs(Q.product(delta, ZERO), ZERO)

    def test_carrier_rank(self):
        self.assertRaises(BadParameter, ReesQuotient, 3, family('k:2', 4))
        self.assertEqual(len(quotient_w(4, 2)), 18)

    def test_word(self):
        eta = corner(4, 2, 'eta')
        self.assertIs(Word((0, 0)).evaluate([eta], rees(2)), ZERO)
        self.assertEqual(Word((0, 0)).evaluate([eta], PLAIN), t('[1,1,1,1]'))
        self.assertRaises(BadParameter, Word, ())
        self.assertEqual(str(rees(3)), 'rees(3)')


class TestGenerates(unittest.TestCase):
    def test_q_genset(self):
        gens = explicit_genset(4, 3, 'Q')
        self.assertEqual([g.literal for g in gens], ['[1,1,2,3]', '[2,3,4,4]'])
        self.assertTrue(generates(gens, quotient_q(4, 3), rees(3)))
        self.assertTrue(is_irredundant(gens, quotient_q(4, 3), rees(3)))

    def test_q_genset_sizes(self):
        for n in range(3, 7):
            for p in range(2, n):
                gens = explicit_genset(n, p, 'Q')
                self.assertEqual(len(gens), 2 * (n - p))
                self.assertTrue(generates(gens, quotient_q(n, p), rees(p)), msg=f'n = {n}, p = {p}')
                self.assertTrue(is_irredundant(gens, quotient_q(n, p), rees(p)), msg=f'n = {n}, p = {p}')

    def test_w_genset(self):
        gens = explicit_genset(4, 3, 'W')
        self.assertEqual([g.literal for g in gens], ['[1,1,2,3]', '[3,2,1,1]', '[4,3,2,2]'])
        self.assertTrue(generates(gens, quotient_w(4, 3), rees(3)))
        # delta* = [4,3,2,2] [1,1,2,3]
        self.assertFalse(is_irredundant(gens, quotient_w(4, 3), rees(3)))
        word = factorize(t('[3,2,1,1]'), [t('[1,1,2,3]'), t('[4,3,2,2]')], rees(3))
        self.assertEqual(word.generator_indices, (1, 0))

    def test_w_genset_sizes(self):
        for n in range(3, 7):
            for p in range(2, n):
                gens = explicit_genset(n, p, 'W')
                self.assertEqual(len(gens), 2 * (n - p) + 1)
                self.assertTrue(generates(gens, quotient_w(n, p), rees(p)), msg=f'n = {n}, p = {p}')

    def test_plain_family(self):
        self.assertTrue(generates(family('k:3', 4), family('l:3', 4)))
        self.assertFalse(generates([identity(4)], family('reg-oct', 4)))

    def test_not_a_member(self):
        self.assertRaises(NotAMember, generates, [t('[1,2,2,3]')], quotient_q(4, 3), rees(3))

    def test_genset_errors(self):
        self.assertRaises(BadParameter, explicit_genset, 4, 4, 'Q')
        self.assertRaises(BadParameter, explicit_genset, 4, 2, 'Z')


class TestFactorize(unittest.TestCase):
    def test_tau_eta(self):
        gens = [corner(4, 2, 'eta'), corner(4, 2, 'tau')]
        word = factorize(corner(4, 2, 'delta'), gens)
        self.assertEqual(word.generator_indices, (1, 0))
        self.assertEqual(word.format(gens), '[3,4,4,4] · [1,1,1,2]')
        self.assertEqual(word.evaluate(gens), corner(4, 2, 'delta'))

    def test_single_letter(self):
        gens = [corner(4, 2, 'eta'), corner(4, 2, 'tau')]
        self.assertEqual(len(factorize(gens[1], gens)), 1)

    def test_unreachable(self):
        self.assertIsNone(factorize(t('[2,3,3,4]'), list(family('reg-oct', 4))))
        self.assertIsNone(factorize(t('[1,1,1,1]'), [corner(4, 2, 'eta')], rees(2)))

    def test_two_letter(self):
        for n, p in [(4, 2), (5, 3), (5, 2), (6, 3)]:
            gens, words = two_letter_factorizations(n, p)
            self.assertEqual(len(gens), 2 * (n - p) + 1)
            self.assertEqual(len(words), (n - p + 1) ** 2)
            for alpha, word in words.items():
                self.assertIsNotNone(word, msg=str(alpha))
                self.assertLessEqual(len(word), 2)
                self.assertEqual(word.evaluate(gens, rees(p)), alpha)


class TestIndecomposables(unittest.TestCase):
    def test_constants(self):
        result = indecomposables(family('l:1', 4))
        self.assertEqual(result.literals(), ['[1,1,1,1]', '[2,2,2,2]', '[3,3,3,3]', '[4,4,4,4]'])

    def test_identity(self):
        result = indecomposables(FamilySet(None, 3, [identity(3)]))
        self.assertEqual(list(result), [identity(3)])

    def test_idempotents(self):
        result = indecomposables(family('e-orct', 4))
        self.assertIn(t('[1,2,2,2]'), result)
        self.assertIn(identity(4), result)
        self.assertEqual(len(result), 7)

    def test_reg_oct(self):
        for n in range(3, 6):
            result = indecomposables(family('reg-oct', n))
            expected = {identity(n), corner(n, n - 1, 'eta'), corner(n, n - 1, 'tau')}
            self.assertEqual(result.as_set(), expected)


class TestMinRank(unittest.TestCase):
    def assertRank(self, target, expected):
        certificate = min_rank(target)
        self.assertTrue(certificate.exact)
        self.assertTrue(certificate.exhaustive_below)
        self.assertIn(certificate.refuted_by, ['seed', 'bound', 'search'])
        self.assertEqual(certificate.size, expected)
        self.assertEqual(len(certificate.generators), expected)
        self.assertTrue(certificate.revalidate(target))
        return certificate

    def test_l_and_m(self):
        self.assertRank(family('l:3', 4), 2)
        self.assertRank(family('l:2', 4), 3)
        self.assertRank(family('l:1', 4), 4)
        self.assertRank(family('m:3', 4), 2)
        self.assertRank(family('m:2', 4), 3)

    def test_l_and_m_general(self):
        for n in range(3, 7):
            for p in range(2, n):
                self.assertRank(family(f'l:{p}', n), n - p + 1)
                self.assertRank(family(f'm:{p}', n), n - p + 1)

    def test_regular(self):
        for n in range(2, 7):
            self.assertRank(family('reg-oct', n), 3)
            self.assertRank(family('reg-orct', n), 2)
        self.assertRank(family('reg-orct', 1), 1)

    def test_idempotents(self):
        for n in range(2, 7):
            self.assertRank(family('e-orct', n), 2 * n - 1)

    def test_quotients(self):
        for n in range(3, 7):
            for p in range(2, n):
                self.assertRank(quotient_q(n, p), n - p + 1)
                self.assertRank(quotient_w(n, p), n - p + 1)

    def test_certificate_record(self):
        certificate = self.assertRank(family('l:3', 4), 2)
        record = certificate.to_dict()
        self.assertEqual(record['target'], 'l:3')
        self.assertEqual(record['p'], 3)
        self.assertEqual(record['mode'], 'plain')
        self.assertEqual(record['refuted_by'], certificate.refuted_by)
        self.assertNotIn('bounds', record)
        self.assertNotIn('factorizations', record)
        self.assertEqual(record['generators'], ['[1,1,2,3]', '[2,3,4,4]'])
        again = RankCertificate.from_dict(record)
        self.assertEqual(again.generators, certificate.generators)
        self.assertEqual(again.size, 2)
        self.assertEqual(again.refuted_by, certificate.refuted_by)

    def test_rees_mode_record(self):
        certificate = self.assertRank(quotient_q(4, 2), 3)
        self.assertEqual(certificate.mode, 'rees(2)')
        self.assertEqual(certificate.target, 'q:2')

    def test_seeded_refutation(self):
        # the indecomposables alone already generate
        self.assertEqual(self.assertRank(family('reg-oct', 4), 3).refuted_by, 'seed')
        self.assertEqual(self.assertRank(family('e-orct', 4), 7).refuted_by, 'seed')

    def test_budget_exhausted(self):
        # lower bound 3 from the row and column constraints; greedy needs 4
        target = quotient_q(4, 2)
        certificate = min_rank(target, budget=0)
        self.assertTrue(certificate.budget_exhausted)
        self.assertFalse(certificate.exact)
        self.assertFalse(certificate.exhaustive_below)
        self.assertIsNone(certificate.refuted_by)
        self.assertEqual(certificate.lower, 3)
        self.assertLess(certificate.lower, certificate.upper)
        self.assertTrue(generates(certificate.generators, target, rees(2)))
        self.assertIn('bounds', certificate.to_dict())

    def test_budget_at_greedy_size_is_exact(self):
        target = family('e-orct', 4)
        certificate = min_rank(target, budget=0)
        self.assertTrue(certificate.exact)
        self.assertEqual(certificate.size, 7)
        self.assertEqual((certificate.lower, certificate.upper), (7, 7))
        self.assertNotIn('bounds', certificate.to_dict())
        self.assertTrue(certificate.revalidate(target, exhaustive=True))

    def test_parallel_agrees(self):
        target = family('m:2', 4)
        self.assertEqual(min_rank(target, jobs=2).generators, min_rank(target).generators)

    def test_revalidate_exhaustive(self):
        target = family('reg-oct', 4)
        certificate = min_rank(target)
        self.assertTrue(certificate.revalidate(target, exhaustive=True))
        self.assertEqual(certificate.refute_below(target), 0)

    def test_refute_below_is_unpruned(self):
        target = family('l:2', 5)
        certificate = self.assertRank(target, 4)
        # every 3-subset of the 21 elements of L(5,2)
        self.assertEqual(len(target), 21)
        self.assertEqual(certificate.refute_below(target), 1330)
        self.assertTrue(certificate.revalidate(target, exhaustive=True))

    def test_refute_below_catches_a_wrong_size(self):
        target = family('l:2', 4)
        certificate = self.assertRank(target, 3)
        certificate.size = 4
        self.assertIsNone(certificate.refute_below(target))
        self.assertFalse(certificate.revalidate(target, exhaustive=True))

    def test_witnesses(self):
        for target in [family('l:3', 4), quotient_q(4, 3)]:
            certificate = min_rank(target, witnesses=True)
            self.assertEqual(len(certificate.factorizations), len(target))
            self.assertTrue(certificate.revalidate(target))
            record = certificate.to_dict()
            self.assertEqual(len(record['factorizations']), len(target))
            self.assertEqual(RankCertificate.from_dict(record).factorizations, certificate.factorizations)

    def test_wrong_witness_fails(self):
        target = family('l:3', 4)
        certificate = min_rank(target, witnesses=True)
        literal = certificate.generators[0].literal
        certificate.factorizations[literal] = Word((1,))
        self.assertFalse(certificate.revalidate(target))

    def test_empty(self):
        self.assertRaises(BadParameter, min_rank, FamilySet(None, 3, []))


class TestGridChecks(unittest.TestCase):
    def test_inclusions(self):
        for n in range(3, 6):
            for p in range(1, n - 1):
                self.assertTrue(inclusion_check(n, p, 'K'))
                self.assertTrue(inclusion_check(n, p, 'J'))
        self.assertRaises(BadParameter, inclusion_check, 4, 3, 'K')
        self.assertRaises(BadParameter, inclusion_check, 4, 1, 'X')

    def test_remark(self):
        for n in range(3, 7):
            for p in range(2, n):
                checks = remark_checks(n, p)
                self.assertEqual(len(checks), 5)
                self.assertTrue(all(checks.values()), msg=f'n = {n}, p = {p}: {checks}')


if __name__ == '__main__':
    unittest.main()
