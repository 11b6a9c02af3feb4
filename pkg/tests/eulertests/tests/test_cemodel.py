from django.test import SimpleTestCase, override_settings

from django_eulerring.cemodel import (
    LieAction,
    RelativeSullivanModel,
    ce_base,
    ce_total,
    even_sphere_relative_model,
    formality_quotient,
    formality_quotient_cpn,
    odd_product_fibre,
    odd_product_relative_model,
    projective_relative_model,
)
from django_eulerring.derlie import DgLieAlgebra, positive_derivations
from django_eulerring.exceptions import EulerRingException, ModelShapeError
from django_eulerring.gcalg import FreeGCAlgebra, Generator


class ChevalleyEilenbergTests(SimpleTestCase):
    def test_base_of_three_seven(self):
        algebra, d = odd_product_fibre([3, 7])
        base, base_d = ce_base(positive_derivations(algebra, d))
        self.assertEqual(list(base.degrees), [4, 5, 8])
        y_1, y_2, y_3 = base.gens()
        self.assertEqual(base_d.image("y_3"), -(y_1 * y_2))
        self.assertTrue(base_d.image("y_1").is_zero())
        self.assertIsNone(base_d.square_failure())

    @override_settings(EULERRING_MAX_LIE_DIMENSION=2)
    def test_dimension_cap(self):
        algebra, d = odd_product_fibre([3, 7])
        with self.assertRaises(ModelShapeError):
            ce_base(positive_derivations(algebra, d))

    def test_action_is_a_map_of_dg_lie_algebras(self):
        algebra, d = odd_product_fibre([3, 5, 7])
        LieAction.from_lie(positive_derivations(algebra, d)).verify()

    def test_total_model_rejects_action_breaking_brackets(self):
        algebra, d = odd_product_fibre([3, 7])
        lie = positive_derivations(algebra, d)
        abelian = DgLieAlgebra(lie.basis)
        action = LieAction(abelian, algebra, d, lie.derivations)
        with self.assertRaises(EulerRingException):
            ce_total(action)


class UniversalModelTests(SimpleTestCase):
    def test_even_sphere(self):
        model = even_sphere_relative_model(1).verify()
        self.assertEqual(model.total.names, ["z_4", "x", "y"])
        total = model.total
        self.assertEqual(model.differential.image("y"), total.gen("x") ** 2 - total.gen("z_4"))
        self.assertTrue(model.base_differential.is_zero())

    def test_projective_plane(self):
        model = projective_relative_model(2).verify()
        self.assertEqual(model.total.names, ["x_2", "x_3", "x", "y"])
        total = model.total
        x = total.gen("x")
        expected = x**3 - total.gen("x_2") * x - total.gen("x_3")
        self.assertEqual(model.differential.image("y"), expected)
        self.assertEqual([g.degree for g in model.total.generators], [4, 6, 2, 5])

    def test_odd_product_names_and_differential(self):
        model = odd_product_relative_model([3, 3]).verify()
        self.assertEqual(model.base.names, ["y^1", "y^2"])
        total = model.total
        self.assertEqual(model.differential.image("x_1"), -total.gen("y^1"))
        self.assertEqual(model.differential.image("x_2"), -total.gen("y^2"))

    def test_odd_product_subset_names(self):
        model = odd_product_relative_model([3, 5])
        self.assertIn("y^2_1", model.base.names)
        total = model.total
        image = model.differential.image("x_2")
        self.assertEqual(image, -total.gen("y^2") - total.gen("y^2_1") * total.gen("x_1"))

    def test_odd_product_total_is_acyclic(self):
        for dims in ([3, 3], [3, 3, 3]):
            dims_ = odd_product_relative_model(dims).cohomology_dims(20)
            self.assertEqual(dims_[0], 1)
            self.assertEqual(dims_[1:], [0] * 20)

    def test_trivial_model(self):
        base = FreeGCAlgebra([Generator("b", 2)])
        model = RelativeSullivanModel.trivial(base).verify()
        self.assertEqual(model.fibre_dimension, 0)
        self.assertEqual(model.cohomology_dims(4), [1, 0, 1, 0, 1])


class FormalityQuotientTests(SimpleTestCase):
    def test_projective_quotient_is_quasi_isomorphism(self):
        for n in (1, 2, 3):
            quotient = formality_quotient_cpn(n)
            self.assertEqual(quotient.chain_map_failures(), [])
            self.assertEqual(quotient.pairing, {"y": "x"})
            self.assertTrue(quotient.is_quasi_isomorphism(4 * (n + 1)))

    def test_even_sphere_quotient(self):
        quotient = formality_quotient(even_sphere_relative_model(2))
        self.assertEqual(quotient.intersection.rank, 2)
        self.assertTrue(quotient.is_quasi_isomorphism())

    def test_odd_products_are_not_pure(self):
        with self.assertRaises(ModelShapeError):
            formality_quotient(odd_product_relative_model([3, 5]))
