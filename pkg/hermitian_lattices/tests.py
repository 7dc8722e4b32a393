from fractions import Fraction

from django.test import SimpleTestCase

from exact_algebra.symbolic import SymbolicReal
from hermitian_periods.exceptions import InvalidInput
from quadratic_symbols.fields import make_field
from quadratic_symbols.local import splitting_type

from .automorphisms import aut_counts, l_pT, sl_equivalent, vectors_of_value
from .classes import enumerate_classes, equivalent
from .jordan import elementary_divisors, normal_form
from .mass import (
    genus, l_chi_odd, mass_via_classes, mass_via_densities, reduced_binary_forms, zeta_even,
)
from .matrices import GlobalHermitian, LocalHermitian, gamma_invariant
from .reduced import ReducedMatrix, apply_forward, count_reduced, pi_p, reduced_matrices, stratum
from .serializers import HermitianMatrixSerializer
from .services import LatticeService


class GammaTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(GlobalHermitian(make_field(4), [5]).gamma(), 5)
        self.assertEqual(GlobalHermitian.identity(make_field(4), 2).gamma(), -4)
        self.assertEqual(GlobalHermitian(make_field(3), [1, 2], [(0, 0)]).gamma(), -6)

    def test_degenerate_rejected(self):
        K = make_field(4)
        # [[1, 1], [1, 1]]: off-diagonal 1 = (2w) / sqrt(-4) with w = i
        T = GlobalHermitian.from_entries(K, [[1, 1], [1, 1]])
        with self.assertRaises(InvalidInput):
            gamma_invariant(T)

    def test_transform_multiplies_by_norm_of_det(self):
        K = make_field(3)
        T = GlobalHermitian(K, [2, 3], [(1, 1)])
        U = [[K.element(1), K.element(1, 1)], [K.element(0), K.element(1)]]
        self.assertEqual(T.transform(U).gamma(), T.gamma())
        V = [[K.element(1, 1), K.element(0)], [K.element(0), K.element(1)]]
        self.assertEqual(T.transform(V).gamma(), T.gamma() * 3)


class NormalFormTests(SimpleTestCase):
    def test_identity_is_unimodular(self):
        ctx = splitting_type(4, 3)
        form = normal_form(LocalHermitian.identity(ctx, 3))
        self.assertEqual(form.unimodular_rank, 3)
        self.assertIsNone(form.tail)

    def test_unramified_tail(self):
        ctx = splitting_type(4, 3)
        form = normal_form(LocalHermitian.diagonal(ctx, [1, 3]))
        self.assertEqual(form.unimodular_rank, 1)
        self.assertEqual(form.tail, LocalHermitian.diagonal(ctx, [1]))

    def test_theta_block(self):
        ctx = splitting_type(3, 3)
        form = normal_form(LocalHermitian.theta(ctx, 2))
        self.assertEqual(form.theta_rank, 2)
        self.assertIsNone(form.tail)

    def test_reassembled_form_is_equivalent(self):
        for D, p, values in ((4, 3, [3, 1, 9]), (4, 5, [5, 1]), (8, 3, [1, 3])):
            ctx = splitting_type(D, p)
            T = LocalHermitian.diagonal(ctx, values)
            self.assertTrue(equivalent(normal_form(T).reassemble(), T))

    def test_elementary_divisors_sorted_by_scale(self):
        ctx = splitting_type(4, 5)
        self.assertEqual(sorted(elementary_divisors(LocalHermitian.diagonal(ctx, [25, 1]))), [0, 2])

    def test_split_entry_with_vanishing_component(self):
        # the off-diagonal entry has components (1, 0)
        ctx = splitting_type(4, 5)
        T = LocalHermitian.from_components(ctx, [[1, 1], [0, 5]])
        self.assertEqual(elementary_divisors(T), (0, 1))


class ClassEnumerationTests(SimpleTestCase):
    def test_rank_one_unramified(self):
        ctx = splitting_type(4, 3)
        reps = enumerate_classes(ctx, 1, 2)
        self.assertEqual([r.matrix for r in reps], [LocalHermitian.diagonal(ctx, [9])])

    def test_rank_two_split(self):
        ctx = splitting_type(4, 5)
        reps = enumerate_classes(ctx, 2, 2)
        self.assertEqual(
            {r.matrix for r in reps},
            {LocalHermitian.diagonal(ctx, [1, 25]), LocalHermitian.diagonal(ctx, [5, 5])},
        )

    def test_odd_ramified_unimodular_classes(self):
        # p^{e} times the unimodular classes: separated by the norm class of the determinant
        ctx = splitting_type(3, 3)
        reps = enumerate_classes(ctx, 2, 2)
        self.assertEqual(len(reps), 2)
        self.assertEqual({r.unit_class for r in reps}, {1, ctx.xi0})
        self.assertFalse(equivalent(reps[0].matrix, reps[1].matrix))

    def test_unit_class_filter(self):
        ctx = splitting_type(3, 3)
        reps = enumerate_classes(ctx, 2, 2, d0=1)
        self.assertEqual([r.unit_class for r in reps], [1])

    def test_representatives_pairwise_inequivalent(self):
        ctx = splitting_type(7, 7)
        reps = enumerate_classes(ctx, 2, 3)
        for i, first in enumerate(reps):
            for second in reps[i + 1:]:
                self.assertFalse(equivalent(first.matrix, second.matrix))

    def test_dyadic_rank_one(self):
        ctx = splitting_type(4, 2)
        reps = enumerate_classes(ctx, 1, 1)
        self.assertEqual(len(reps), 2)

    def test_invalid_arguments(self):
        with self.assertRaises(InvalidInput):
            enumerate_classes(splitting_type(4, 3), 0, 1)


class EquivalenceTests(SimpleTestCase):
    def test_reflexive(self):
        ctx = splitting_type(4, 3)
        A = LocalHermitian.diagonal(ctx, [1, 3])
        self.assertTrue(equivalent(A, A))

    def test_permutation(self):
        ctx = splitting_type(4, 3)
        self.assertTrue(equivalent(LocalHermitian.diagonal(ctx, [1, 3]), LocalHermitian.diagonal(ctx, [3, 1])))

    def test_distinct_elementary_divisors(self):
        ctx = splitting_type(4, 5)
        self.assertFalse(equivalent(LocalHermitian.diagonal(ctx, [1, 25]), LocalHermitian.diagonal(ctx, [5, 5])))

    def test_dyadic_column_search(self):
        ctx = splitting_type(4, 2)
        A = LocalHermitian.diagonal(ctx, [2, 2])
        # [[2, 2], [2, 4]] = A[[1, 1], [0, 1]]
        B = LocalHermitian(ctx, [[2, 2], [2, 4]])
        self.assertTrue(equivalent(A, B))
        self.assertFalse(equivalent(A, LocalHermitian.diagonal(ctx, [2, 6])))


class AutomorphismTests(SimpleTestCase):
    def test_rank_one_gaussian(self):
        K = make_field(4)
        self.assertEqual(aut_counts(GlobalHermitian.identity(K, 1)), (1, 4))
        self.assertEqual(aut_counts(GlobalHermitian(K, [3])), (1, 4))

    def test_identity_gaussian(self):
        # signed monomial matrices with unit entries; det 1 cuts them by the unit group
        self.assertEqual(aut_counts(GlobalHermitian.identity(make_field(4), 2)), (8, 32))

    def test_identity_eisenstein(self):
        self.assertEqual(aut_counts(GlobalHermitian.identity(make_field(3), 2)), (12, 72))

    def test_vectors_of_value(self):
        K = make_field(4)
        self.assertEqual(len(vectors_of_value(GlobalHermitian.identity(K, 2), 1)), 8)
        self.assertEqual(len(vectors_of_value(GlobalHermitian.identity(K, 2), 2)), 24)

    def test_sl_equivalence(self):
        K = make_field(4)
        T = GlobalHermitian.identity(K, 2)
        # [[1, -i], [i, 2]] = 1_2[[1, -i], [0, 1]]
        other = GlobalHermitian(K, [1, 2], [(2, 0)])
        self.assertTrue(sl_equivalent(T, other))
        self.assertFalse(sl_equivalent(T, GlobalHermitian(K, [1, 2], [(0, 0)])))

    def test_determinant_index(self):
        ctx = splitting_type(4, 3)
        self.assertEqual(l_pT(LocalHermitian.diagonal(ctx, [3])), 1)
        self.assertEqual(l_pT(LocalHermitian.identity(ctx, 2)), 1)

    def test_degree_limit(self):
        with self.assertRaises(InvalidInput):
            aut_counts(GlobalHermitian.identity(make_field(4), 3))


class ReducedMatrixTests(SimpleTestCase):
    def test_counts(self):
        ctx = splitting_type(4, 3)
        self.assertEqual(count_reduced(ctx, 1, 2), 1)
        self.assertEqual(count_reduced(ctx, 1, 1), 0)
        # diag(1, p) with a free corner mod p, diag(p, 1)
        self.assertEqual(count_reduced(ctx, 2, 2), 9 + 1)

    def test_ramified_counts(self):
        ctx = splitting_type(3, 3)
        # corners run over O/varpi^e: diag(1, varpi^2), diag(varpi, varpi), diag(varpi^2, 1)
        self.assertEqual(count_reduced(ctx, 2, 2), 9 + 3 + 1)
        self.assertEqual(count_reduced(ctx, 2, 1), 3 + 1)

    def test_split_counts(self):
        ctx = splitting_type(4, 5)
        self.assertEqual(count_reduced(ctx, 1, 1), 2)

    def test_pi_weights(self):
        ctx = splitting_type(3, 3)
        K = ctx.field
        one, zero = K.element(1), K.element(0)
        self.assertEqual(pi_p(ctx, [[one, zero], [zero, one]]), 1)
        self.assertEqual(pi_p(ctx, [[one, zero], [zero, ctx.prime_element]]), -1)
        inert = splitting_type(4, 3)
        G = inert.field
        self.assertEqual(pi_p(inert, [[G.element(1), G.element(0)], [G.element(0), G.element(9)]]), 0)
        # p 1_2 = varpi 1_2 at an inert prime: the top stratum, weight N(p) = p^2
        p_identity = [[G.element(3), G.element(0)], [G.element(0), G.element(3)]]
        self.assertEqual(stratum(inert, p_identity), 2)
        self.assertEqual(pi_p(inert, p_identity), 9)

    def test_reduced_matrices_have_requested_nu(self):
        ctx = splitting_type(3, 3)
        for W in reduced_matrices(ctx, 2, 2):
            self.assertEqual(W.nu, 2)

    def test_forward_image_uses_the_adjoint(self):
        ctx = splitting_type(4, 3)
        G = ctx.field
        W = ReducedMatrix(2, (1, 0), rows=((G.element(3), G.element(1)), (G.element(0), G.element(1))))
        T = LocalHermitian.identity(ctx, 2)
        # W T W*, not W* T W = ((9, 3), (3, 2))
        self.assertEqual(apply_forward(T, W), LocalHermitian(ctx, [[10, 1], [1, 1]]))


class MassTests(SimpleTestCase):
    def test_special_values(self):
        self.assertEqual(zeta_even(2), SymbolicReal(Fraction(1, 6), pi_exp=2))
        self.assertEqual(l_chi_odd(make_field(4), 1), SymbolicReal(Fraction(1, 4), pi_exp=1))
        self.assertEqual(l_chi_odd(make_field(3), 1), SymbolicReal(Fraction(1, 9), pi_exp=1, radicand=3))

    def test_rank_one(self):
        T = GlobalHermitian.identity(make_field(4), 1)
        self.assertEqual(mass_via_classes(T), 1)
        self.assertEqual(mass_via_densities(T), 1)

    def test_reduction_finds_identity(self):
        K = make_field(4)
        forms = reduced_binary_forms(K, 1)
        self.assertIn(GlobalHermitian.identity(K, 2), forms)
        self.assertTrue(all(F.det() == 1 for F in forms))

    def test_identity_genus_gaussian(self):
        T = GlobalHermitian.identity(make_field(4), 2)
        self.assertEqual(len(genus(T)), 1)
        self.assertEqual(mass_via_classes(T), Fraction(1, 8))

    def test_identity_gaussian_both_sides(self):
        T = GlobalHermitian.identity(make_field(4), 2)
        self.assertEqual(mass_via_densities(T), mass_via_classes(T))

    def test_identity_eisenstein_both_sides(self):
        T = GlobalHermitian.identity(make_field(3), 2)
        self.assertEqual(mass_via_classes(T), Fraction(1, 12))
        self.assertEqual(mass_via_densities(T), mass_via_classes(T))

    def test_class_number_gate(self):
        with self.assertRaises(InvalidInput):
            mass_via_classes(GlobalHermitian.identity(make_field(15), 2))


class SerializerTests(SimpleTestCase):
    def test_round_trip_through_service(self):
        K = make_field(3)
        T = GlobalHermitian(K, [2, 3], [(1, 1)])
        self.assertEqual(LatticeService.parse(T.to_dict()), T)

    def test_local_matrix(self):
        ctx = splitting_type(3, 3)
        A = LocalHermitian.theta(ctx, 2)
        self.assertEqual(LatticeService.parse(A.to_dict(), local=True), A)

    def test_rejects_wrong_lengths(self):
        serializer = HermitianMatrixSerializer(data={'m': 2, 'diag': [1], 'off': [], 'D': 4})
        self.assertFalse(serializer.is_valid())

    def test_rejects_non_fundamental(self):
        serializer = HermitianMatrixSerializer(data={'m': 1, 'diag': [1], 'off': [], 'D': 12})
        self.assertFalse(serializer.is_valid())
