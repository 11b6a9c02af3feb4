"""The acceptance suite run by ``manage.py verify --suite paper``.

Checks are grouped under keys such as ``even-sphere:2``, ``cpn:3``,
``odd-product:3,5`` and ``properties``; every check returns ``None`` on success or
the first counterexample as a string.
"""

import logging
import random
from itertools import combinations_with_replacement
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from django.conf import settings
from sympy import Integer, Symbol

from .cli import FAMILIES
from .eulerring import (
    INDEPENDENT,
    ch_relations,
    euler_ring_report,
    independence_certificate,
    kappa_table,
    leading_term_checks,
    presentation_generators,
)
from .exceptions import EulerRingException, InvalidSpaceSpec
from .fibint import (
    build_pi,
    dual_basis,
    even_sphere_pi,
    lh_euler_class,
    lh_fibre_integrate,
    umkehr_euler,
    uniqueness_dimension,
)
from .gcalg import AlgElement, Derivation, FreeGCAlgebra, Generator
from .spaces import EvenSphere, OddSphereProduct, ProjectiveSpace

logger = logging.getLogger(__name__)

FAULTS = ("bar-pi-sign",)
PROPERTY_CASES = 100

Check = Callable[[], Optional[str]]


def random_element(algebra: FreeGCAlgebra, degree: int, rng: random.Random, terms: int = 3) -> AlgElement:
    """A homogeneous element with up to `terms` monomials and small integer coefficients."""
    basis = algebra.graded_basis(degree)
    if not basis:
        return algebra.zero()
    chosen = rng.sample(basis, min(terms, len(basis)))
    return algebra.element({m: rng.choice([-3, -2, -1, 1, 2, 3]) for m in chosen})


class CheckResult:
    def __init__(self, key: str, name: str, counterexample: Optional[str]) -> None:
        self.key = key
        self.name = name
        self.counterexample = counterexample

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> Dict[str, Any]:
        return {"key": self.key, "check": self.name, "passed": self.passed, "counterexample": self.counterexample}

    def __str__(self) -> str:
        status = "ok" if self.passed else f"FAILED: {self.counterexample}"
        return f"[{self.key}] {self.name}: {status}"

    def __repr__(self) -> str:
        return str(self)


class SuiteResult:
    def __init__(self, results: List[CheckResult], seed: int) -> None:
        self.results = results
        self.seed = seed

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "seed": self.seed,
            "checks": [r.to_json() for r in self.results],
        }


# even spheres


def _even_sphere_checks(n: int) -> List[Tuple[str, Check]]:
    space = EvenSphere(n)

    def model_shape() -> Optional[str]:
        model = space.relative_model.verify()
        x, z = model.total.gen("x"), model.total.gen(f"z_{4 * n}")
        if model.differential.image("y") != x**2 - z:
            return f"D(y) = {model.differential.image('y')}"
        return None

    def kappa_identities() -> Optional[str]:
        table = kappa_table(space, 8)
        z = space.base.gen(f"z_{4 * n}")
        if table[2] != z.scale(8):
            return f"kappa_2 = {table[2]}"
        for k in range(1, 5):
            expected = (table[2] ** k).scale(Integer(2) ** (1 - k))
            if table[2 * k] != expected:
                return f"kappa_{2 * k} = {table[2 * k]}, expected {expected}"
        for k in range(0, 4):
            if table[2 * k + 1]:
                return f"kappa_{2 * k + 1} = {table[2 * k + 1]}"
        return None

    def euler_routes() -> Optional[str]:
        ci = space.intersection
        x = ci.fibre_variable(0)
        if ci.euler_class() != x.scale(2):
            return f"det-Jacobian Euler class {ci.euler_class()}"
        lh = lh_euler_class(ci)
        if lh != ci.euler_class():
            return f"Leray–Hirsch Euler class {lh}"
        pi = even_sphere_pi(space.relative_model)
        total_x = space.relative_model.total.gen("x")
        for k in range(6):
            chain = pi(total_x**k)
            if chain.relabel(ci.base) != lh_fibre_integrate(ci, ci.power(x, k)):
                return f"fibre integrals of x^{k} differ"
        return None

    return [("model shape", model_shape), ("kappa identities", kappa_identities), ("Euler class routes", euler_routes)]


# projective spaces


def _projective_checks(n: int, seed: int) -> List[Tuple[str, Check]]:
    space = ProjectiveSpace(n)

    def model_integrity() -> Optional[str]:
        space.relative_model.verify()
        quotient = space.quotient
        for row in quotient.cohomology_table(4 * (n + 1)):
            if not row["total"] == row["quotient"] == row["rank"]:
                return f"degree {row['degree']}: {row}"
        return None

    def euler_class() -> Optional[str]:
        ci = space.intersection
        x = ci.fibre_variable(0)
        expected = ci.power(x, n).scale(n + 1)
        for i in range(2, n + 1):
            expected = expected - (ci.ring.gen(f"x_{i}") * ci.power(x, n - i)).scale(n + 1 - i)
        expected = ci.normal_form(expected)
        det = ci.euler_class()
        if det != expected:
            return f"det-Jacobian {det} != {expected}"
        lh = lh_euler_class(ci)
        if lh != det:
            return f"Leray–Hirsch {lh} != {det}"
        return None

    def trace_identity() -> Optional[str]:
        ci = space.intersection
        e = ci.euler_class()
        if ci.fibre_integrate(e) != ci.base.scalar(n + 1):
            return f"pi_!(e) = {ci.fibre_integrate(e)}"
        rng = random.Random(seed)
        for _ in range(50):
            degree = 2 * rng.randint(0, 2 * n)
            a = random_element(ci.ring, degree, rng)
            if ci.trace(a) != ci.fibre_integrate(ci.multiply(e, a)):
                return f"Tr({a}) != pi_!(e*{a})"
        return None

    def relations() -> Optional[str]:
        try:
            found = ch_relations(space, n + 4)
        except EulerRingException as e:
            return str(e)
        if n == 2:
            kappa_1 = Symbol("kappa_1")
            second = next(r for r in found if r.index == 2)
            if second.expression != kappa_1**2:
                return str(second)
        return None

    def leading_terms() -> Optional[str]:
        report = leading_term_checks(n)
        if not report:
            return str(report.failures()[0])
        table = kappa_table(space, n + 1)
        generators = presentation_generators(space)
        certificate = independence_certificate([table[i] for i in generators], space.base.names, seed)
        if certificate.verdict != INDEPENDENT:
            return f"independence: {certificate}"
        return None

    def exact_values() -> Optional[str]:
        table = kappa_table(space, 3)
        x2, x3 = space.base.gen("x_2"), space.base.gen("x_3")
        expected = {1: x2.scale(3), 2: (x2**2).scale(9), 3: (x2**3).scale(15) + (x3**2).scale(81)}
        for i, value in expected.items():
            if table[i] != value:
                return f"kappa_{i} = {table[i]}, expected {value}"
        return None

    checks = [("model integrity", model_integrity), ("Euler class", euler_class), ("trace identity", trace_identity)]
    if n >= 2:
        checks += [("Cayley–Hamilton relations", relations), ("leading terms and independence", leading_terms)]
    if n == 2:
        checks.append(("exact kappa values", exact_values))
    return checks


# odd sphere products


def _odd_product_checks(dims: Sequence[int], fault: Optional[str]) -> List[Tuple[str, Check]]:
    space = OddSphereProduct(dims)

    def fibre_integration() -> Optional[str]:
        model = space.relative_model.verify()
        try:
            build_pi(model)
        except EulerRingException as e:
            return str(e)
        dimension = uniqueness_dimension(model)
        if dimension != 1:
            return f"uniqueness dimension {dimension}"
        return None

    def umkehr() -> Optional[str]:
        result = umkehr_euler(space.pi, koszul=fault != "bar-pi-sign")
        failures = result.shape_failures()
        if failures:
            return f"Delta_!(1) term {failures[0]}"
        if result.euler:
            return f"e^fw = {result.euler}"
        return None

    def euler_ring() -> Optional[str]:
        report = euler_ring_report(space)
        nonzero = [k for k in report.table.indices if report.table[k]]
        if nonzero:
            return f"kappa_{nonzero[0]} = {report.table[nonzero[0]]}"
        if report.presentation != "Q":
            return report.presentation
        return None

    def acyclic() -> Optional[str]:
        dims_ = space.relative_model.cohomology_dims(20)
        bad = [j for j in range(1, 21) if dims_[j]]
        return f"H^{bad[0]} has dimension {dims_[bad[0]]}" if bad else None

    checks = [("fibre integration", fibre_integration), ("Umkehr class", umkehr), ("Euler ring", euler_ring)]
    if len(set(dims)) == 1 and dims[0] == 3 and len(dims) in (2, 3):
        checks.append(("total model acyclic", acyclic))
    return checks


# randomized properties


def _property_checks(seed: int) -> List[Tuple[str, Check]]:
    algebra = FreeGCAlgebra(
        [Generator("a", 2), Generator("b", 3), Generator("c", 3), Generator("e", 4), Generator("f", 5)]
    )

    def graded_commutativity() -> Optional[str]:
        rng = random.Random(seed)
        for _ in range(PROPERTY_CASES):
            p, q = rng.randint(0, 10), rng.randint(0, 10)
            a, b = random_element(algebra, p, rng), random_element(algebra, q, rng)
            if a * b != (b * a).scale((-1) ** (p * q)):
                return f"({a})*({b})"
        return None

    def leibniz() -> Optional[str]:
        rng = random.Random(seed + 1)
        for _ in range(PROPERTY_CASES):
            shift = rng.randint(-3, 3)
            images = {
                g.name: random_element(algebra, g.degree + shift, rng, 2)
                for g in algebra.generators
                if g.degree + shift >= 0
            }
            theta = Derivation(algebra, shift, images)
            p, q = rng.randint(0, 9), rng.randint(0, 9)
            a, b = random_element(algebra, p, rng), random_element(algebra, q, rng)
            if theta(a * b) != theta(a) * b + (a * theta(b)).scale((-1) ** (shift * p)):
                return f"{theta} on ({a})*({b})"
        return None

    def lie_identities() -> Optional[str]:
        lie = OddSphereProduct([3, 5, 7]).relative_model.lie
        if lie.antisymmetry_failures():
            return f"antisymmetry {lie.antisymmetry_failures()[0]}"
        if lie.jacobi_failures():
            return f"Jacobi {lie.jacobi_failures()[0]}"
        rng = random.Random(seed + 2)
        basis = lie.derivations
        for _ in range(PROPERTY_CASES):
            theta, eta, zeta = (rng.choice(basis).scale(rng.randint(1, 3)) for _ in range(3))
            sign = (-1) ** (theta.shift * eta.shift)
            if theta.bracket(eta) != -(eta.bracket(theta).scale(sign)):
                return f"antisymmetry [{theta}, {eta}]"
            lhs = theta.bracket(eta.bracket(zeta))
            rhs = theta.bracket(eta).bracket(zeta) + eta.bracket(theta.bracket(zeta)).scale(sign)
            if lhs != rhs:
                return f"Jacobi ({theta}, {eta}, {zeta})"
        return None

    def push_pull() -> Optional[str]:
        space = OddSphereProduct([3, 5])
        model, pi = space.relative_model, space.pi
        rng = random.Random(seed + 3)
        for _ in range(PROPERTY_CASES):
            b = random_element(model.base, rng.randint(0, 12), rng)
            e = random_element(model.total, rng.randint(0, 16), rng)
            if pi(model.include(b) * e) != b * pi(e):
                return f"b = {b}, e = {e}"
        return None

    def normal_form_idempotence() -> Optional[str]:
        ci = ProjectiveSpace(3).intersection
        rng = random.Random(seed + 4)
        for _ in range(PROPERTY_CASES):
            a = random_element(ci.ring, 2 * rng.randint(0, 12), rng, 4)
            once = ci.normal_form(a)
            if ci.normal_form(once) != once or not ci.is_normal(once):
                return str(a)
        return None

    def dual_basis_property() -> Optional[str]:
        spaces = [EvenSphere(n) for n in (1, 2, 3)] + [ProjectiveSpace(n) for n in range(1, 6)]
        cases = 0
        for space in spaces:
            ci = space.intersection
            dual = dual_basis(ci)
            for i, alpha in enumerate(ci.basis):
                for j, sharp in enumerate(dual):
                    value = lh_fibre_integrate(ci, ci.multiply(ci.basis_element(alpha), sharp))
                    cases += 1
                    if value != ci.base.scalar(1 if i == j else 0):
                        return f"{space}: pi_!(e_{i} e_{j}^#) = {value}"
        logger.debug("dual basis property checked on %d pairs", cases)
        return None

    return [
        ("graded commutativity", graded_commutativity),
        ("Leibniz rule", leibniz),
        ("Jacobi and antisymmetry", lie_identities),
        ("push-pull", push_pull),
        ("normal form idempotence", normal_form_idempotence),
        ("dual basis", dual_basis_property),
    ]


# assembly


def odd_product_dims(max_factors: int = 3, choices: Sequence[int] = (3, 5, 7)) -> List[Tuple[int, ...]]:
    return [
        dims
        for m in range(1, max_factors + 1)
        for dims in combinations_with_replacement(choices, m)
    ]


def suite_keys() -> List[str]:
    keys = [f"even-sphere:{n}" for n in (1, 2, 3)]
    keys += [f"cpn:{n}" for n in range(1, 6)]
    keys += [f"odd-product:{','.join(map(str, dims))}" for dims in odd_product_dims()]
    keys.append("properties")
    return keys


def _selected(key: str, only: Optional[Sequence[str]]) -> bool:
    if not only:
        return True
    return any(key == o or key.split(":")[0] == o for o in only)


def run_suite(
    only: Optional[Sequence[str]] = None,
    inject_fault: Optional[str] = None,
    seed: Optional[int] = None,
    stop_at_first_failure: bool = False,
) -> SuiteResult:
    """
    Run the acceptance checks.

    Args:
        only (Optional[Sequence[str]]): Keys (``cpn:3``) or families (``cpn``) to run.
        inject_fault (Optional[str]): ``"bar-pi-sign"`` drops the Koszul sign of the
            bar(Π⊗Π) pairing.
        seed (Optional[int]): Seed of the randomized checks (default ``EULERRING_SEED``).
        stop_at_first_failure (bool): Return as soon as a check fails.

    Raises:
        InvalidSpaceSpec: If a filter or fault is unknown.
    """
    seed = getattr(settings, "EULERRING_SEED", 20240712) if seed is None else seed
    if inject_fault is not None and inject_fault not in FAULTS:
        raise InvalidSpaceSpec(f"fault must be one of {FAULTS}", inject_fault)
    keys = suite_keys()
    for o in only or []:
        if o not in keys and o not in FAMILIES + ("properties",):
            raise InvalidSpaceSpec("not part of the suite", o)
    results = []
    for key in keys:
        if not _selected(key, only):
            continue
        family, _, value = key.partition(":")
        if family == "even-sphere":
            checks = _even_sphere_checks(int(value))
        elif family == "cpn":
            checks = _projective_checks(int(value), seed)
        elif family == "odd-product":
            checks = _odd_product_checks([int(d) for d in value.split(",")], inject_fault)
        else:
            checks = _property_checks(seed)
        for name, check in checks:
            try:
                counterexample = check()
            except EulerRingException as e:
                counterexample = str(e)
            result = CheckResult(key, name, counterexample)
            logger.debug("%s", result)
            results.append(result)
            if stop_at_first_failure and not result.passed:
                return SuiteResult(results, seed)
    return SuiteResult(results, seed)
