from django.test import SimpleTestCase

from django_eulerring.cemodel import (
    RelativeSullivanModel,
    even_sphere_relative_model,
    odd_product_relative_model,
)
from django_eulerring.exceptions import ModelShapeError
from django_eulerring.fibint import (
    bar_pi_matrix,
    build_pi,
    dual_basis,
    even_sphere_pi,
    lh_euler_class,
    lh_fibre_integrate,
    umkehr_euler,
    uniqueness_dimension,
)
from django_eulerring.gcalg import FreeGCAlgebra, Generator
from django_eulerring.spaces import EvenSphere, ProjectiveSpace


class FiniteFibreTests(SimpleTestCase):
    def setUp(self):
        self.model = odd_product_relative_model([3])
        self.pi = build_pi(self.model)

    def test_top_monomial_integrates_to_one(self):
        total = self.model.total
        self.assertEqual(self.pi(total.gen("x_1")), self.model.base.one())
        self.assertTrue(self.pi(total.one()).is_zero())
        self.assertEqual(self.pi.values(), {"1": "0", "x_1": "1"})

    def test_bar_pi_matrix(self):
        self.assertEqual(bar_pi_matrix(self.pi), [[0, -1], [1, 0]])

    def test_umkehr_class_of_three_sphere(self):
        result = umkehr_euler(self.pi)
        self.assertEqual(result.delta_shriek_one, {((1,), (0,)): 1, ((0,), (1,)): -1})
        self.assertEqual(result.shape_failures(), [])
        self.assertTrue(result.euler.is_zero())

    def test_wrong_tensor_sign_changes_euler_class(self):
        result = umkehr_euler(self.pi, koszul=False)
        self.assertEqual(result.euler, self.model.total.gen("x_1").scale(2))

    def test_uniqueness(self):
        for dims in ([3, 3], [3, 5, 7]):
            self.assertEqual(uniqueness_dimension(odd_product_relative_model(dims)), 1)

    def test_point_fibre(self):
        base = FreeGCAlgebra([Generator("b", 2)])
        model = RelativeSullivanModel.trivial(base)
        self.assertEqual(uniqueness_dimension(model), 1)
        pi = build_pi(model)
        self.assertEqual(pi(base.gen("b")), base.gen("b"))
        result = umkehr_euler(pi)
        self.assertEqual(result.delta_shriek_one, {((), ()): 1})
        self.assertEqual(result.euler, base.one())


class EvenSphereIntegrationTests(SimpleTestCase):
    def test_infinite_fibre_is_rejected(self):
        with self.assertRaises(ModelShapeError):
            build_pi(even_sphere_relative_model(1))

    def test_chain_level_agrees_with_module_basis(self):
        model = even_sphere_relative_model(1)
        pi = even_sphere_pi(model)
        ci = EvenSphere(1).intersection
        total = model.total
        x, z = total.gen("x"), total.gen("z_4")
        for element in (x, x**3, z * x, x**2, total.one()):
            expected = lh_fibre_integrate(ci, element.project(ci.ring))
            self.assertEqual(pi(element), expected)
        self.assertTrue(pi(total.gen("y") * x).is_zero())

    def test_dual_basis_and_euler_class(self):
        ci = EvenSphere(1).intersection
        x = ci.ring.gen("x")
        self.assertEqual(dual_basis(ci), [x, ci.ring.one()])
        self.assertEqual(lh_euler_class(ci), x.scale(2))


class LerayHirschTests(SimpleTestCase):
    def setUp(self):
        self.ci = ProjectiveSpace(2).intersection

    def test_euler_class_from_dual_basis(self):
        self.assertEqual(lh_euler_class(self.ci), self.ci.euler_class())

    def test_dual_basis_property(self):
        ci = self.ci
        dual = dual_basis(ci)
        for i, alpha in enumerate(ci.basis):
            for j, sharp in enumerate(dual):
                value = lh_fibre_integrate(ci, ci.multiply(ci.basis_element(alpha), sharp))
                self.assertEqual(value, ci.base.scalar(1 if i == j else 0))

    def test_push_pull(self):
        ci = self.ci
        ring = ci.ring
        x, x_2 = ring.gen("x"), ring.gen("x_2")
        self.assertTrue(lh_fibre_integrate(ci, ring.one()).is_zero())
        self.assertEqual(lh_fibre_integrate(ci, x_2 * x**2), ci.base.gen("x_2"))
        self.assertEqual(
            lh_fibre_integrate(ci, x_2 * x**4),
            ci.base.gen("x_2") * lh_fibre_integrate(ci, x**4),
        )
