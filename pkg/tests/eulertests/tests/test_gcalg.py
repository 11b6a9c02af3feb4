import random

from django.test import SimpleTestCase

from django_eulerring.exceptions import (
    AlgebraMismatchError,
    DegreeError,
    DifferentialError,
    EulerRingFieldTypeError,
)
from django_eulerring.gcalg import (
    AlgElement,
    Derivation,
    Differential,
    FreeGCAlgebra,
    Generator,
    cohomology_dims,
    partial,
)
from django_eulerring.suite import random_element


def poincare_series(degrees, up_to):
    """Coefficients of the product of ``1 + t^d`` over odd and ``1/(1 - t^d)`` over even degrees."""
    coeffs = [1] + [0] * up_to
    for d in degrees:
        if d % 2:
            coeffs = [c + (coeffs[k - d] if k >= d else 0) for k, c in enumerate(coeffs)]
        else:
            for k in range(d, up_to + 1):
                coeffs[k] += coeffs[k - d]
    return coeffs


def sphere_model():
    algebra = FreeGCAlgebra([Generator("x", 2), Generator("y", 3)])
    return algebra, Differential(algebra, {"y": algebra.gen("x") ** 2})


class FreeGCAlgebraTests(SimpleTestCase):
    def test_odd_generators_anticommute(self):
        algebra = FreeGCAlgebra([Generator("a", 3), Generator("b", 5)])
        a, b = algebra.gens()
        self.assertEqual(a * b, -(b * a))
        self.assertTrue((a * a).is_zero())

    def test_even_generators_are_polynomial(self):
        algebra = FreeGCAlgebra([Generator("x", 2)])
        x = algebra.gen("x")
        self.assertEqual((x * x).coefficient((2,)), 1)
        self.assertEqual((x**3).homogeneous_degree(), 6)

    def test_graded_basis_skips_odd_squares(self):
        algebra, _ = sphere_model()
        self.assertEqual(algebra.graded_basis(5), [(1, 1)])
        self.assertEqual(algebra.graded_basis(6), [(3, 0)])
        self.assertEqual(algebra.graded_basis(-1), [])

    def test_non_positive_degree_is_rejected(self):
        with self.assertRaises(DegreeError):
            FreeGCAlgebra([Generator("t", 0)]).graded_basis(2)

    def test_mixing_algebras_raises(self):
        first = FreeGCAlgebra([Generator("x", 2)])
        second = FreeGCAlgebra([Generator("z", 4)])
        with self.assertRaises(AlgebraMismatchError):
            first.gen("x") + second.gen("z")

    def test_str_orders_by_degree(self):
        algebra = FreeGCAlgebra([Generator("x_2", 4), Generator("x_3", 6)])
        element = algebra.gen("x_2").scale(3) - algebra.gen("x_3")
        self.assertEqual(str(element), "-x_3 + 3*x_2")

    def test_json(self):
        algebra = FreeGCAlgebra([Generator("x_2", 4), Generator("x_3", 6)])
        element = algebra.gen("x_2").scale("1/2") - algebra.gen("x_3")
        data = element.to_json()
        self.assertEqual(data["vars"], ["x_2", "x_3"])
        self.assertEqual(data["terms"][0], {"coeff": "-1", "exps": [0, 1]})
        self.assertEqual(data["terms"][1], {"coeff": "1/2", "exps": [1, 0]})
        self.assertEqual(AlgElement.from_json(algebra, data), element)

    def test_relabel_applies_permutation_sign(self):
        source = FreeGCAlgebra([Generator("a", 3), Generator("b", 5)])
        target = FreeGCAlgebra([Generator("b", 5), Generator("a", 3)])
        product = source.gen("a") * source.gen("b")
        self.assertEqual(product.relabel(target), -(target.gen("b") * target.gen("a")))
        self.assertEqual(product.relabel(target).coefficient((1, 1)), -1)

    def test_project_drops_missing_generators(self):
        big = FreeGCAlgebra([Generator("z", 4), Generator("x", 2)])
        small = FreeGCAlgebra([Generator("x", 2)])
        element = big.gen("x") ** 2 - big.gen("z")
        self.assertEqual(element.project(small), small.gen("x") ** 2)
        with self.assertRaises(AlgebraMismatchError):
            element.relabel(small)

    def test_evaluate(self):
        algebra = FreeGCAlgebra([Generator("x_2", 4)])
        self.assertEqual((algebra.gen("x_2") ** 2).scale(3).evaluate({"x_2": 2}), 12)

    def test_sympy_bridge(self):
        algebra = FreeGCAlgebra([Generator("x_2", 4), Generator("x_3", 6)])
        element = (algebra.gen("x_2") ** 3).scale(15) + (algebra.gen("x_3") ** 2).scale(81)
        self.assertEqual(AlgElement.from_sympy(algebra, element.to_sympy()), element)

    def test_graded_basis_matches_generating_function(self):
        degrees = [2, 3, 3, 4, 5]
        algebra = FreeGCAlgebra([Generator(f"g_{i}", d) for i, d in enumerate(degrees)])
        expected = poincare_series(degrees, 16)
        self.assertEqual([len(algebra.graded_basis(k)) for k in range(17)], expected)
        self.assertEqual(expected[:7], [1, 0, 1, 2, 2, 3, 3])

    def test_graded_commutativity_on_random_elements(self):
        algebra = FreeGCAlgebra(
            [Generator("a", 2), Generator("b", 3), Generator("c", 3), Generator("e", 5)]
        )
        rng = random.Random(7)
        for _ in range(100):
            p, q = rng.randint(0, 9), rng.randint(0, 9)
            a, b = random_element(algebra, p, rng), random_element(algebra, q, rng)
            self.assertEqual(a * b, (b * a).scale((-1) ** (p * q)))


class DerivationTests(SimpleTestCase):
    def test_leibniz_on_odd_generators(self):
        algebra = FreeGCAlgebra([Generator("a", 3), Generator("b", 5)])
        a, b = algebra.gens()
        theta = partial(algebra, "a")
        self.assertEqual(theta(a * b), b)
        self.assertEqual(theta(b * a), -b)

    def test_differential_of_product(self):
        algebra, d = sphere_model()
        x, y = algebra.gens()
        self.assertEqual(d(x * y), x**3)
        self.assertTrue(d(d(x * y)).is_zero())

    def test_wrong_image_degree(self):
        algebra, _ = sphere_model()
        with self.assertRaises(DegreeError):
            Derivation(algebra, -1, {"y": algebra.gen("x") ** 2})

    def test_shift_must_be_int(self):
        algebra, _ = sphere_model()
        with self.assertRaises(EulerRingFieldTypeError):
            Derivation(algebra, "1")

    def test_bracket_is_graded_commutator(self):
        algebra = FreeGCAlgebra([Generator("x_1", 3), Generator("x_2", 7)])
        first = partial(algebra, "x_1")
        second = Derivation(algebra, -4, {"x_2": algebra.gen("x_1")})
        self.assertEqual(first.bracket(second), partial(algebra, "x_2"))

    def test_square_failure(self):
        algebra = FreeGCAlgebra([Generator("u", 2), Generator("v", 3)])
        d = Differential(algebra, {"u": algebra.gen("v"), "v": algebra.gen("u") ** 2})
        self.assertEqual(d.square_failure(), "u")
        with self.assertRaises(DifferentialError):
            d.check()

    def test_cohomology_of_two_sphere(self):
        algebra, d = sphere_model()
        self.assertEqual(cohomology_dims(algebra, d, 6), [1, 0, 1, 0, 0, 0, 0])
