import random

from django.test import SimpleTestCase

from django_eulerring.cemodel import projective_relative_model
from django_eulerring.cintersect import CompleteIntersection
from django_eulerring.exceptions import DegreeError, EulerRingFieldTypeError, ModelShapeError
from django_eulerring.gcalg import FreeGCAlgebra, Generator
from django_eulerring.spaces import ProjectiveSpace
from django_eulerring.suite import random_element


def projective_plane():
    return ProjectiveSpace(2).intersection


class ProjectivePlaneTests(SimpleTestCase):
    def setUp(self):
        self.ci = projective_plane()
        ring = self.ci.ring
        self.x = ring.gen("x")
        self.x_2 = ring.gen("x_2")
        self.x_3 = ring.gen("x_3")

    def test_shape(self):
        self.assertEqual(self.ci.rank, 3)
        self.assertEqual(self.ci.euler_characteristic, 3)
        self.assertEqual(self.ci.fibre_dimension, 4)
        self.assertEqual(self.ci.basis, [(0,), (1,), (2,)])

    def test_normal_form(self):
        x, x_2, x_3 = self.x, self.x_2, self.x_3
        self.assertEqual(self.ci.normal_form(x**3), x_2 * x + x_3)
        self.assertEqual(self.ci.normal_form(x**4), x_2 * x**2 + x_3 * x)
        once = self.ci.normal_form(x**7 - x_2 * x**5)
        self.assertEqual(self.ci.normal_form(once), once)
        self.assertTrue(self.ci.is_normal(once))

    def test_euler_class_is_jacobian_determinant(self):
        self.assertEqual(self.ci.euler_class(), self.x**2 * 3 - self.x_2)

    def test_fibre_integration(self):
        base = self.ci.base
        self.assertEqual(self.ci.fibre_integrate(self.x**2), base.one())
        self.assertEqual(self.ci.fibre_integrate(self.x**4), base.gen("x_2"))
        self.assertTrue(self.ci.fibre_integrate(self.x).is_zero())
        self.assertEqual(self.ci.fibre_integrate(self.ci.euler_class()), base.scalar(3))

    def test_trace_of_euler_class(self):
        expected = self.ci.base.gen("x_2").scale(3)
        e = self.ci.euler_class()
        self.assertEqual(self.ci.trace(e), expected)
        self.assertEqual(self.ci.fibre_integrate(self.ci.multiply(e, e)), expected)
        self.assertEqual(self.ci.trace_form()(e), expected)

    def test_coordinates(self):
        element = self.x**4
        coordinates = self.ci.coordinates(element)
        self.assertEqual(coordinates[(2,)], self.ci.base.gen("x_2"))
        self.assertEqual(coordinates[(1,)], self.ci.base.gen("x_3"))
        self.assertTrue(coordinates[(0,)].is_zero())
        self.assertEqual(self.ci.from_coordinates(coordinates), self.ci.normal_form(element))

    def test_graded_dimension(self):
        self.assertEqual(self.ci.graded_dimension(0), 1)
        self.assertEqual(self.ci.graded_dimension(4), 2)
        self.assertEqual(self.ci.graded_dimension(6), 2)
        self.assertEqual(self.ci.graded_dimension(8), 3)


class CharacteristicPolynomialTests(SimpleTestCase):
    def test_projective_line(self):
        ci = ProjectiveSpace(1).intersection
        polynomial = ci.characteristic_polynomial(ci.euler_class())
        base = ci.base
        self.assertEqual(polynomial.degree, 2)
        self.assertEqual(polynomial.coefficients[0], base.one())
        self.assertTrue(polynomial.coefficients[1].is_zero())
        self.assertEqual(polynomial.coefficients[2], base.gen("x_2").scale(-4))

    def test_cayley_hamilton_in_projective_plane(self):
        ci = projective_plane()
        polynomial = ci.characteristic_polynomial(ci.euler_class())
        self.assertTrue(polynomial(ci.euler_class()).is_zero())


class ConstructionTests(SimpleTestCase):
    def test_two_variables(self):
        fibre = [Generator("u", 2), Generator("v", 4)]
        ring = FreeGCAlgebra(fibre)
        ci = CompleteIntersection(FreeGCAlgebra([]), fibre, [ring.gen("u") ** 2, ring.gen("v") ** 2]).verify()
        self.assertEqual(ci.rank, 4)
        self.assertEqual(ci.fibre_dimension, 6)
        self.assertEqual(ci.top, (1, 1))
        self.assertEqual(ci.euler_class(), (ci.ring.gen("u") * ci.ring.gen("v")).scale(4))

    def test_remainder_must_lower_the_power(self):
        fibre = [Generator("x", 2), Generator("y", 2)]
        ring = FreeGCAlgebra(fibre)
        x, y = ring.gens()
        CompleteIntersection(FreeGCAlgebra([]), fibre[:1], [x**2])
        with self.assertRaises(ModelShapeError):
            CompleteIntersection(FreeGCAlgebra([]), fibre, [x**2 - y**2, y**2 - x**2])

    def test_odd_fibre_variable(self):
        with self.assertRaises(DegreeError):
            CompleteIntersection(FreeGCAlgebra([]), [Generator("y", 3)], [])

    def test_base_type(self):
        with self.assertRaises(EulerRingFieldTypeError):
            CompleteIntersection("Q[x_2]", [Generator("x", 2)], [])

    def test_determinant_orientation(self):
        base = FreeGCAlgebra([Generator("x_2", 4)])
        fibre = [Generator("x", 2)]
        ring = FreeGCAlgebra(list(base.generators) + fibre)
        relation = ring.gen("x") ** 2 - ring.gen("x_2")
        ci = CompleteIntersection(base, fibre, [relation], orientation="det")
        self.assertEqual(ci.epsilon(), 1)
        self.assertEqual(ci.fibre_integrate(ci.euler_class()), base.scalar(2))


def projective_series(n, up_to):
    """Coefficients of ``(1 + t^2 + ... + t^{2n}) / prod_{i=2}^{n+1} (1 - t^{2i})``."""
    base = [1] + [0] * up_to
    for i in range(2, n + 2):
        for k in range(2 * i, up_to + 1):
            base[k] += base[k - 2 * i]
    return [sum(base[k - 2 * j] for j in range(n + 1) if k >= 2 * j) for k in range(up_to + 1)]


class ProjectiveSeriesTests(SimpleTestCase):
    def test_dimensions_match_generating_function(self):
        for n, up_to in ((2, 12), (3, 10)):
            expected = projective_series(n, up_to)
            ci = ProjectiveSpace(n).intersection
            self.assertEqual([ci.graded_dimension(k) for k in range(up_to + 1)], expected)
            self.assertEqual(projective_relative_model(n).cohomology_dims(up_to), expected)

    def test_series_of_projective_plane(self):
        self.assertEqual(projective_series(2, 8), [1, 0, 1, 0, 2, 0, 2, 0, 3])


class RandomizedIntersectionTests(SimpleTestCase):
    def test_normal_form_is_multiplicative(self):
        rng = random.Random(11)
        for n in (2, 3):
            ci = ProjectiveSpace(n).intersection
            for _ in range(20):
                p, q = 2 * rng.randint(0, 4), 2 * rng.randint(0, 4)
                a, b = random_element(ci.ring, p, rng), random_element(ci.ring, q, rng)
                self.assertEqual(
                    ci.normal_form(a * b),
                    ci.normal_form(ci.normal_form(a) * ci.normal_form(b)),
                )

    def test_trace_is_base_linear(self):
        rng = random.Random(5)
        for n in (2, 3):
            ci = ProjectiveSpace(n).intersection
            for _ in range(20):
                b = random_element(ci.base, 2 * rng.randint(0, 3), rng)
                m = random_element(ci.ring, 2 * rng.randint(0, 4), rng)
                self.assertEqual(ci.trace(b.relabel(ci.ring) * m), b * ci.trace(m))
