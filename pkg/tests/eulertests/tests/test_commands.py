import json
from io import StringIO

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from django_eulerring.cli import SpaceSpec, render_table
from django_eulerring.exceptions import InvalidSpaceSpec


def run(*args, **kwargs):
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO(), **kwargs)
    return out.getvalue()


class SpaceSpecTests(SimpleTestCase):
    def test_keys(self):
        self.assertEqual(SpaceSpec.from_key("odd-product:5,3").key, "odd-product:3,5")
        self.assertEqual(SpaceSpec.parse("cpn", "3").key, "cpn:3")
        self.assertEqual(SpaceSpec.from_key("even-sphere:2").build().label, "S^4")

    def test_invalid(self):
        for family, n, dims in (("torus", 1, None), ("cpn", 0, None), ("odd-product", None, "3,4"), ("cpn", "two", None)):
            with self.assertRaises(InvalidSpaceSpec):
                SpaceSpec.parse(family, n, dims)

    def test_render_table(self):
        table = render_table([{"i": 1, "kappa_i": "3*x_2"}], ["i", "kappa_i"])
        self.assertEqual(table.splitlines(), ["i  kappa_i", "-  -------", "1  3*x_2"])


class ModelCommandTests(SimpleTestCase):
    def test_projective_plane_json(self):
        data = json.loads(run("model", "cpn", n=2, output_format="json", max_degree=8))
        self.assertEqual([g["name"] for g in data["generators"]], ["x_2", "x_3", "x", "y"])
        self.assertEqual(data["d"], 4)
        self.assertEqual(data["cohomology"][0], 1)
        self.assertEqual(len(data["cohomology"]), 9)

    def test_differentials_in_json(self):
        data = json.loads(run("model", "even-sphere", n=1, output_format="json", max_degree=8))
        generators = {g["name"]: g for g in data["generators"]}
        self.assertEqual(list(generators), ["z_4", "x", "y"])
        y = generators["y"]["differential_json"]
        self.assertEqual(y["vars"], ["z_4", "x", "y"])
        self.assertEqual(
            sorted((t["coeff"], tuple(t["exps"])) for t in y["terms"]),
            [("-1", (1, 0, 0)), ("1", (0, 2, 0))],
        )
        self.assertEqual(generators["z_4"]["differential_json"]["terms"], [])
        self.assertEqual(generators["x"]["differential_json"]["terms"], [])

    def test_lie_algebra_and_intersection_in_json(self):
        data = json.loads(run("model", "even-sphere", n=1, output_format="json", max_degree=4))
        self.assertEqual(len(data["der_plus"]["basis"]), 3)
        self.assertEqual(data["acting"]["basis"], [{"name": data["acting"]["basis"][0]["name"], "degree": 3}])
        self.assertEqual(set(data["intersection"]), {"base", "fibre", "relations", "basis", "euler_class", "traces"})
        self.assertEqual(len(data["intersection"]["basis"]), 2)
        self.assertIsNone(data["umkehr"])

    def test_umkehr_in_json(self):
        data = json.loads(run("model", "odd-product", dims="3", output_format="json", max_degree=6))
        self.assertEqual(data["umkehr"]["delta_shriek_one"], ["-1*1⊗x_1", "1*x_1⊗1"])
        self.assertEqual(data["umkehr"]["euler"]["terms"], [])
        self.assertEqual(data["euler_class"], "0")
        self.assertIsNone(data["intersection"])
        self.assertEqual(data["der_plus"], data["acting"])
        self.assertEqual([b["degree"] for b in data["der_plus"]["basis"]], [3])

    def test_table(self):
        output = run("model", "odd-product", dims="3,3", output_format="table")
        self.assertIn("S^3xS^3", output)
        self.assertIn("y^1", output)

    def test_invalid_spec_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            run("model", "torus", n=1)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_invalid_format(self):
        with self.assertRaises(CommandError) as ctx:
            run("model", "cpn", n=1, output_format="xml")
        self.assertEqual(ctx.exception.returncode, 2)


class KappaCommandTests(SimpleTestCase):
    def test_projective_plane(self):
        data = json.loads(run("kappa", "cpn", n=2, max_index=3, output_format="json", seed=5))
        self.assertEqual([k["text"] for k in data["kappas"]], ["3*x_2", "9*x_2^2", "15*x_2^3 + 81*x_3^2"])
        self.assertEqual(data["seed"], 5)

    def test_report(self):
        output = run("kappa", "cpn", n=2, report=True, output_format="table")
        self.assertIn("kappa_2 = kappa_1**2", output)
        self.assertIn("Euler ring: Q[kappa_1, kappa_3]", output)
        self.assertIn("leading terms: passed", output)

    def test_max_index_must_be_positive(self):
        with self.assertRaises(CommandError) as ctx:
            run("kappa", "cpn", n=2, max_index=0)
        self.assertEqual(ctx.exception.returncode, 2)


class VerifyCommandTests(SimpleTestCase):
    def test_single_key_passes(self):
        output = run("verify", only=["cpn:2"], seed=1)
        self.assertIn("checks passed (seed 1)", output)
        self.assertNotIn("FAILED", output)

    def test_full_suite_passes(self):
        output = run("verify", seed=1)
        self.assertIn("checks passed (seed 1)", output)
        self.assertNotIn("FAILED", output)

    def test_injected_fault_is_reported(self):
        with self.assertRaises(CommandError) as ctx:
            run("verify", only=["odd-product:3"], inject_fault="bar-pi-sign", failfast=True)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn("odd-product:3 / Umkehr class", str(ctx.exception))

    def test_unknown_filter(self):
        with self.assertRaises(CommandError) as ctx:
            run("verify", only=["cpn:99"])
        self.assertEqual(ctx.exception.returncode, 2)
