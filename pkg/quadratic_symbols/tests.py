import itertools
import math
import random

import numpy as np
from django.test import SimpleTestCase

from hermitian_periods.exceptions import InvalidInput

from .fields import FieldData, chi_Q, chi_q, kronecker_chi, make_field
from .hilbert import hilbert_symbol
from .local import parse_context, splitting_type
from .residue import ResidueRing
from .serializers import LocalContextSerializer
from .services import SymbolService


class FieldDataTests(SimpleTestCase):
    def test_generators(self):
        self.assertEqual((make_field(3).t, make_field(3).n), (1, 1))
        self.assertEqual((make_field(4).t, make_field(4).n), (0, 1))
        self.assertEqual((make_field(8).t, make_field(8).n), (0, 2))
        self.assertEqual(make_field(15).prime_divisors, (3, 5))
        self.assertEqual(make_field(8).c_D, 1)

    def test_sqrt_minus_D_squares_to_minus_D(self):
        for D in (3, 4, 7, 8, 15, 20, 24):
            s = make_field(D).sqrt_minus_D
            self.assertEqual(s * s, -D)

    def test_rejects_non_fundamental(self):
        for D in (1, 2, 5, 12, 16, 27):
            with self.assertRaises(InvalidInput):
                FieldData(D)

    def test_unit_groups(self):
        self.assertEqual(len(make_field(3).units()), 6)
        self.assertEqual(len(make_field(4).units()), 4)
        self.assertEqual(len(make_field(7).units()), 2)

    def test_norm_is_multiplicative(self):
        K = make_field(7)
        x, y = K.element(2, -3), K.element(1, 5)
        self.assertEqual((x * y).norm(), x.norm() * y.norm())
        self.assertEqual((x * x.inverse()), 1)


class KroneckerTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(kronecker_chi(make_field(4), 3), -1)
        self.assertEqual(kronecker_chi(make_field(3), 7), 1)
        self.assertEqual(kronecker_chi(make_field(15), 10), 0)
        self.assertEqual(kronecker_chi(make_field(4), -1), -1)

    def test_multiplicative(self):
        for D in (3, 4, 8):
            K = make_field(D)
            values = {a: kronecker_chi(K, a) for a in range(1, 201)}
            for a in range(1, 201):
                for b in range(1, 201 // a + 1):
                    if a * b <= 200:
                        self.assertEqual(values[a * b], values[a] * values[b])

    def test_period(self):
        K = make_field(7)
        for a in range(1, 50):
            self.assertEqual(kronecker_chi(K, a), kronecker_chi(K, a + 7))


class CharacterDecompositionTests(SimpleTestCase):
    def test_empty_set_is_trivial(self):
        K = make_field(15)
        self.assertTrue(all(chi_Q(K, (), a) == 1 for a in range(1, 30)))

    def test_prime_discriminant(self):
        K = make_field(7)
        self.assertTrue(all(chi_q(K, 7, a) == kronecker_chi(K, a) for a in range(1, 30)))

    def test_product_is_chi(self):
        for D in (15, 20, 24):
            K = make_field(D)
            for a in range(1, D + 1):
                self.assertEqual(chi_Q(K, K.prime_divisors, a), kronecker_chi(K, a))
        K = make_field(15)
        self.assertEqual(chi_q(K, 3, 7) * chi_q(K, 5, 7), kronecker_chi(K, 7))

    def test_rejects_unramified_prime(self):
        with self.assertRaises(InvalidInput):
            chi_q(make_field(15), 7, 2)


class SplittingTypeTests(SimpleTestCase):
    def test_examples(self):
        ctx = splitting_type(make_field(3), 2)
        self.assertEqual((ctx.splitting, ctx.xi), ('inert', -1))
        ctx = splitting_type(make_field(4), 2)
        self.assertEqual((ctx.splitting, ctx.xi, ctx.f, ctx.i_p, ctx.e), ('ramified', 0, 2, 0, 1))
        ctx = splitting_type(make_field(7), 2)
        self.assertEqual((ctx.splitting, ctx.xi), ('split', 1))
        ctx = splitting_type(make_field(8), 2)
        self.assertEqual((ctx.f, ctx.e, ctx.i_p), (3, 2, 1))
        ctx = splitting_type(make_field(3), 3)
        self.assertEqual((ctx.f, ctx.e, ctx.i_p, ctx.delta), (1, 1, 1, 0))

    def test_unramified_have_no_twist(self):
        for D, p in ((3, 5), (4, 5), (7, 11)):
            ctx = splitting_type(D, p)
            self.assertEqual((ctx.e, ctx.f), (0, 0))

    def test_hensel_root(self):
        ctx = splitting_type(7, 2)
        M = 2 ** ctx.precision
        r = ctx.root
        self.assertEqual((r * r - r + 2) % M, 0)

    def test_valuations_match_norms(self):
        for D, p in ((4, 2), (3, 2), (7, 2), (3, 3), (8, 2), (4, 5)):
            ctx = splitting_type(D, p)
            K = ctx.field
            for a, b in ((1, 1), (2, 0), (0, 1), (3, -1), (4, 6)):
                x = K.element(a, b)
                v = ctx.valuation(x)
                if ctx.is_split:
                    self.assertEqual(sum(v), ctx.ord_norm(x))
                elif ctx.is_inert:
                    self.assertEqual(2 * v, ctx.ord_norm(x))
                else:
                    self.assertEqual(v, ctx.ord_norm(x))

    def test_vanishing_split_component(self):
        ctx = splitting_type(4, 5)
        v = ctx.valuation(ctx.field.element(-ctx.root, 1))
        self.assertEqual(v, (math.inf, 0))

    def test_prime_element_has_norm_order_one(self):
        for D, p in ((3, 3), (4, 2), (8, 2), (15, 5), (20, 2)):
            ctx = splitting_type(D, p)
            self.assertEqual(ctx.ord_norm(ctx.prime_element), 1)

    def test_context_labels(self):
        ctx = parse_context('D=4,p=2')
        self.assertEqual(ctx.describe(), {'D': 4, 'p': 2, 'splitting': 'ramified', 'xi': 0, 'f': 2, 'e': 1, 'i_p': 0})
        with self.assertRaises(InvalidInput):
            parse_context('D=4')

    def test_serializer_validates(self):
        self.assertTrue(LocalContextSerializer(data={'D': 4, 'p': 2}).is_valid())
        self.assertFalse(LocalContextSerializer(data={'D': 12, 'p': 2}).is_valid())
        self.assertFalse(LocalContextSerializer(data={'D': 4, 'p': 9}).is_valid())


class HilbertSymbolTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(hilbert_symbol(-1, -1, 2), -1)
        for p in (3, 5, 7):
            for u, v in ((1, 2), (2, 3), (-1, 5)):
                if u % p and v % p:
                    self.assertEqual(hilbert_symbol(u, v, p), 1)
        self.assertEqual(hilbert_symbol(5, 2, 5), -1)
        self.assertEqual(hilbert_symbol(5, 4, 5), 1)
        self.assertEqual(hilbert_symbol(7, 3, 7), -1)

    def test_symmetry_and_bimultiplicativity(self):
        values = [-1, 2, -2, 3, -3, 5, -5]
        for p in (2, 3, 5):
            for a, b, c in itertools.product(values, repeat=3):
                self.assertEqual(hilbert_symbol(a, b, p), hilbert_symbol(b, a, p))
                self.assertEqual(
                    hilbert_symbol(a * c, b, p),
                    hilbert_symbol(a, b, p) * hilbert_symbol(c, b, p),
                )

    def test_product_formula(self):
        values = [-1, 2, -2, 3, -3, 5, -5]
        for a, b in itertools.product(values, repeat=2):
            product = -1 if a < 0 and b < 0 else 1
            for p in (2, 3, 5, 7):
                product *= hilbert_symbol(a, b, p)
            self.assertEqual(product, 1, (a, b))

    def test_large_prime_matches_legendre(self):
        self.assertEqual(hilbert_symbol(17, 3, 17), -1)
        self.assertEqual(hilbert_symbol(17, 2, 17), 1)
        self.assertEqual(hilbert_symbol(3, 5, 17), 1)


class LocalNormTests(SimpleTestCase):
    def test_gaussian_two_adic(self):
        ctx = splitting_type(4, 2)
        self.assertEqual(ctx.chi_local(1), 1)
        self.assertEqual(ctx.chi_local(3), -1)
        self.assertEqual(ctx.chi_local(5), 1)
        self.assertEqual(ctx.unit_classes(), [1, 3])

    def test_norms_do_not_change_the_class(self):
        rng = random.Random(7)
        for D, p in ((3, 3), (4, 2), (8, 2), (15, 5)):
            ctx = splitting_type(D, p)
            K = ctx.field
            for u in (1, ctx.xi0):
                for _ in range(50):
                    x = K.element(rng.randrange(-30, 30), rng.randrange(-30, 30))
                    if ctx.ord_norm(x) != 0:
                        continue
                    self.assertEqual(ctx.chi_local(u * x.norm()), ctx.chi_local(u))

    def test_rejects_non_units_and_unramified(self):
        with self.assertRaises(InvalidInput):
            splitting_type(4, 2).chi_local(2)
        with self.assertRaises(InvalidInput):
            splitting_type(4, 5).chi_local(2)


class ResidueRingTests(SimpleTestCase):
    def test_norm_is_multiplicative_and_galois_invariant(self):
        for D, p in ((3, 2), (3, 3), (4, 2), (7, 2)):
            ring = ResidueRing(splitting_type(D, p), 2)
            a, b = ring.elements()
            x = (np.repeat(a, a.size), np.repeat(b, b.size))
            y = (np.tile(a, a.size), np.tile(b, b.size))
            self.assertTrue(np.array_equal(ring.norm(ring.mul(x, y)), ring.norm(x) * ring.norm(y) % ring.modulus))
            self.assertTrue(np.array_equal(ring.norm(ring.conj(x)), ring.norm(x)))
            self.assertTrue(np.array_equal(ring.trace(ring.conj(x)), ring.trace(x)))

    def test_scalar_elements(self):
        ring = ResidueRing(splitting_type(4, 5), 2)
        i = ring.element(0, 1)
        self.assertEqual(i * i, -1)
        self.assertEqual((i + 2).norm(), 5)
        self.assertFalse((i + 2).is_unit())

    def test_unit_count(self):
        # |(O/p)^*| is p^2-1 inert, (p-1)^2 split, p(p-1) ramified
        self.assertEqual(ResidueRing(splitting_type(3, 2), 1).units()[0].size, 3)
        self.assertEqual(ResidueRing(splitting_type(7, 2), 1).units()[0].size, 1)
        self.assertEqual(ResidueRing(splitting_type(3, 3), 1).units()[0].size, 6)


class SymbolServiceTests(SimpleTestCase):
    def test_character_subsets(self):
        self.assertEqual(SymbolService.character_subsets(15), [(), (3,), (5,), (3, 5)])
        self.assertEqual(SymbolService.chi(4, 3), -1)
