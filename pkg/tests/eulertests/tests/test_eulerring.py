from django.test import SimpleTestCase, override_settings

from django_eulerring.eulerring import (
    DEPENDENT,
    INDEPENDENT,
    ch_relations,
    euler_ring_report,
    independence_certificate,
    kappa,
    kappa_table,
    leading_term_checks,
    presentation_generators,
)
from django_eulerring.exceptions import DegreeError
from django_eulerring.spaces import EvenSphere, OddSphereProduct, ProjectiveSpace


class KappaClassTests(SimpleTestCase):
    def setUp(self):
        self.space = ProjectiveSpace(2)
        self.base = self.space.base
        self.x_2 = self.base.gen("x_2")
        self.x_3 = self.base.gen("x_3")

    def test_projective_plane_values(self):
        table = kappa_table(self.space, 3)
        self.assertEqual(table[1], self.x_2.scale(3))
        self.assertEqual(table[2], (self.x_2**2).scale(9))
        self.assertEqual(table[3], (self.x_2**3).scale(15) + (self.x_3**2).scale(81))
        self.assertEqual(table.indices, [1, 2, 3])

    def test_kappa_zero_is_euler_characteristic(self):
        self.assertEqual(kappa(self.space, 0), self.base.scalar(3))

    def test_negative_index(self):
        with self.assertRaises(DegreeError):
            kappa(self.space, -1)

    def test_projective_line(self):
        space = ProjectiveSpace(1)
        self.assertEqual(kappa(space, 2), space.base.gen("x_2").scale(8))
        self.assertTrue(kappa(space, 1).is_zero())

    def test_even_sphere_odd_kappas_vanish(self):
        space = EvenSphere(1)
        z = space.base.gen("z_4")
        table = kappa_table(space, 4)
        self.assertTrue(table[1].is_zero())
        self.assertTrue(table[3].is_zero())
        self.assertEqual(table[2], z.scale(8))
        self.assertEqual(table[4], (z**2).scale(32))

    def test_odd_product_kappas_vanish(self):
        table = kappa_table(OddSphereProduct([3, 5]), 3)
        self.assertTrue(all(table[i].is_zero() for i in table.indices))


class RelationTests(SimpleTestCase):
    def test_projective_plane(self):
        relations = ch_relations(ProjectiveSpace(2), 3)
        self.assertEqual([str(r) for r in relations], ["kappa_2 = kappa_1**2"])
        self.assertTrue(relations[0].verified)
        self.assertEqual(presentation_generators(ProjectiveSpace(2)), [1, 3])

    def test_even_sphere(self):
        relations = {r.index: str(r) for r in ch_relations(EvenSphere(1), 4)}
        self.assertEqual(relations[1], "kappa_1 = 0")
        self.assertEqual(relations[3], "kappa_3 = 0")
        self.assertEqual(relations[4], "kappa_4 = kappa_2**2/2")
        self.assertNotIn(2, relations)

    def test_default_range(self):
        relations = ch_relations(ProjectiveSpace(2))
        self.assertEqual([r.index for r in relations], [2, 4, 5, 6])
        self.assertTrue(all(r.verified for r in relations))


class IndependenceTests(SimpleTestCase):
    def setUp(self):
        self.space = ProjectiveSpace(2)
        self.table = kappa_table(self.space, 3)
        self.variables = self.space.base.names

    def test_symbolic_certificate(self):
        certificate = independence_certificate([self.table[1], self.table[3]], self.variables, seed=1)
        self.assertEqual(certificate.verdict, INDEPENDENT)
        self.assertEqual(certificate.method, "symbolic")
        self.assertEqual(certificate.certificate, "486*x_3")
        self.assertTrue(certificate)

    def test_dependent(self):
        certificate = independence_certificate([self.table[1], self.table[2]], self.variables, seed=1)
        self.assertEqual(certificate.verdict, DEPENDENT)
        self.assertEqual(certificate.certificate, "no certificate found")
        self.assertFalse(certificate)

    @override_settings(EULERRING_SYMBOLIC_JACOBIAN_MAX=1)
    def test_evaluation_at_random_point(self):
        certificate = independence_certificate([self.table[1], self.table[3]], self.variables, seed=3)
        self.assertEqual(certificate.method, "evaluation")
        self.assertEqual(certificate.verdict, INDEPENDENT)
        self.assertEqual(certificate.seed, 3)
        self.assertEqual(int(certificate.certificate), 486 * certificate.point["x_3"])

    def test_shape_mismatch(self):
        with self.assertRaises(DegreeError):
            independence_certificate([self.table[1]], self.variables)


class LeadingTermTests(SimpleTestCase):
    def test_projective_plane_and_space(self):
        for n in (2, 3):
            report = leading_term_checks(n)
            self.assertTrue(report.passed, report.failures())
            self.assertEqual({c["step"] for c in report.checks}, {1, 2, 3})

    def test_projective_line_is_rejected(self):
        with self.assertRaises(DegreeError):
            leading_term_checks(1)

    @override_settings(EULERRING_LEADING_TERM_MAX_N=2)
    def test_bound_from_settings(self):
        self.assertTrue(leading_term_checks(2).passed)
        with self.assertRaises(DegreeError):
            leading_term_checks(3)
        self.assertIsNone(euler_ring_report(ProjectiveSpace(3), max_index=4, seed=1).leading_terms)


class ReportTests(SimpleTestCase):
    def test_projective_plane(self):
        report = euler_ring_report(ProjectiveSpace(2), max_index=4, seed=11)
        self.assertEqual(report.presentation, "Q[kappa_1, kappa_3]")
        data = report.to_json()
        self.assertEqual(data["seed"], 11)
        self.assertEqual(data["independence"]["verdict"], INDEPENDENT)
        self.assertTrue(data["leading_terms"]["passed"])
        self.assertEqual(data["relations"], ["kappa_2 = kappa_1**2", "kappa_4 = " + str(report.relations[1].expression)])

    def test_even_sphere(self):
        report = euler_ring_report(EvenSphere(1), seed=1)
        self.assertEqual(report.presentation, "Q[kappa_2]")
        self.assertIsNone(report.leading_terms)
        self.assertFalse(report.identity_component_only)

    def test_odd_product(self):
        report = euler_ring_report(OddSphereProduct([3, 3]), seed=1)
        self.assertEqual(report.presentation, "Q")
        self.assertTrue(report.identity_component_only)
        data = report.to_json()
        self.assertEqual(data["euler_class"], "0")
        self.assertIsNone(data["independence"])
