"""κ-classes, Cayley–Hamilton relations and the presentation of the Euler ring.

``κ_i = π_!(e^{i+1})`` where ``e`` is the fibrewise Euler class. For a complete
intersection of module rank ``N`` the traces ``Tr(e^m) = κ_m`` (``Tr(1) = N``) give the
characteristic polynomial of ``e`` through Newton's identities; integrating
``p(e)·e^k`` yields a relation for every ``k``.
"""

import logging
import random
from typing import Any, Dict, List, Optional, Sequence

from django.conf import settings
from sympy import Integer, Matrix, Symbol, diff, expand
from sympy.polys.matrices import DomainMatrix

from .exceptions import DegreeError, EulerRingException
from .gcalg import AlgElement
from .spaces import FibrationSpace, ProjectiveSpace

logger = logging.getLogger(__name__)

INDEPENDENT = "independent"
DEPENDENT = "dependent"
INCONCLUSIVE = "inconclusive"


def kappa_symbol(i: int) -> Symbol:
    return Symbol(f"kappa_{i}")


# κ-classes


def kappa(space: FibrationSpace, i: int) -> AlgElement:
    """
    ``κ_i = π_!(e^{i+1})``, a polynomial in the base generators.

    Raises:
        DegreeError: If `i` is negative or the result is not of degree ``i·d``.
    """
    if i < 0:
        raise DegreeError("kappa index must be >= 0", i)
    value = space.integrate(space.power(space.euler_class, i + 1))
    degree = value.homogeneous_degree()
    if degree is not None and degree != i * space.fibre_dimension:
        raise DegreeError(f"kappa_{i} has degree {degree}, expected {i * space.fibre_dimension}")
    return value


class KappaTable:
    """
    The classes ``κ_1, ..., κ_m`` of a space.

    Args:
        space (FibrationSpace): The fibre.
        entries (Dict[int, AlgElement]): ``κ_i`` by index.
    """

    def __init__(self, space: FibrationSpace, entries: Dict[int, AlgElement]) -> None:
        self.space = space
        self.entries = entries

    def __getitem__(self, i: int) -> AlgElement:
        if i not in self.entries:
            self.entries[i] = kappa(self.space, i)
        return self.entries[i]

    @property
    def indices(self) -> List[int]:
        return sorted(self.entries)

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"i": i, "poly": self.entries[i].to_json(), "text": str(self.entries[i])}
            for i in self.indices
        ]

    def __str__(self) -> str:
        return str({f"kappa_{i}": str(self.entries[i]) for i in self.indices})

    def __repr__(self) -> str:
        return str(self)


def kappa_table(space: FibrationSpace, max_index: int) -> KappaTable:
    table = KappaTable(space, {})
    for i in range(1, max_index + 1):
        table.entries[i] = kappa(space, i)
    logger.debug("kappa table of %s: %s", space, table)
    return table


# Cayley–Hamilton relations


class Relation:
    """``κ_index = expression`` with `expression` a sympy polynomial in the generators."""

    def __init__(self, index: int, expression: Any, verified: bool) -> None:
        self.index = index
        self.expression = expression
        self.verified = verified

    def __str__(self) -> str:
        return f"{kappa_symbol(self.index)} = {self.expression}"

    def __repr__(self) -> str:
        return str(self)


def presentation_generators(space: FibrationSpace) -> List[int]:
    """``κ_1..κ_{N−2}`` and ``κ_N`` for a complete intersection of rank ``N``; none otherwise."""
    ci = space.intersection
    if ci is None:
        return []
    rank = ci.rank
    return list(range(1, rank - 1)) + [rank]


def _elementary(power_sums: Dict[int, Any], rank: int) -> List[Any]:
    """Newton's identities: ``m·e_m = Σ_{i=1}^m (−1)^{i−1} e_{m−i} p_i``."""
    e = [Integer(1)]
    for m in range(1, rank + 1):
        total = sum(((-1) ** (i - 1)) * e[m - i] * power_sums[i] for i in range(1, m + 1))
        e.append(expand(total / m))
    return e


def ch_relations(space: FibrationSpace, up_to_index: Optional[int] = None, table: Optional[KappaTable] = None) -> List[Relation]:
    """
    Relations expressing every ``κ_i`` over the generators of the Euler ring.

    For a complete intersection of rank ``N`` the relation obtained from ``p(e)·e^k``
    solves for ``κ_{N−1}`` (``k = 0``) and ``κ_{N−1+k}`` (``k >= 2``); ``k = 1`` gives no
    new information. Each relation is checked by substituting the actual classes.
    Spaces without a complete intersection have all ``κ_i = 0``.

    Args:
        space (FibrationSpace): The fibre.
        up_to_index (Optional[int]): Largest index to express (default ``N + 3``).
        table (Optional[KappaTable]): Already computed classes.

    Raises:
        EulerRingException: If a relation does not hold or disagrees with the
            characteristic polynomial of the multiplication matrix.
    """
    table = table or KappaTable(space, {})
    ci = space.intersection
    if ci is None:
        top = up_to_index or 3
        relations = []
        for i in range(1, top + 1):
            relations.append(Relation(i, Integer(0), table[i].is_zero()))
        return relations
    rank = ci.rank
    top = up_to_index if up_to_index is not None else rank + 3
    generators = presentation_generators(space)
    symbols = {i: kappa_symbol(i) for i in range(1, max(top, rank) + 1)}
    power_sums = {i: symbols[i] for i in range(1, rank + 1)}
    elementary = _elementary(power_sums, rank)
    _check_characteristic_polynomial(space, table, elementary, rank)

    def kappa_term(i: int) -> Any:
        if i < 0:
            return Integer(0)
        if i == 0:
            return Integer(rank)
        return symbols[i]

    solved: Dict[Symbol, Any] = {}
    relations = []
    for k in [0] + list(range(2, top - rank + 2)):
        target = rank - 1 + k
        if target > top:
            break
        identity = sum(((-1) ** m) * elementary[m] * kappa_term(rank - m - 1 + k) for m in range(rank + 1))
        identity = expand(identity.subs(solved))
        unknown = symbols[target]
        coefficient = diff(identity, unknown)
        if coefficient == 0 or diff(coefficient, unknown) != 0:
            raise EulerRingException("relation is not linear in its target", str(unknown))
        expression = expand(-identity.subs(unknown, 0) / coefficient)
        solved[unknown] = expression
        relations.append(Relation(target, expression, _holds(table, target, expression, generators)))
    failed = [r for r in relations if not r.verified]
    if failed:
        raise EulerRingException("Cayley–Hamilton relation does not hold", str(failed[0]))
    logger.debug("relations of %s: %s", space, relations)
    return relations


def _holds(table: KappaTable, index: int, expression: Any, generators: Sequence[int]) -> bool:
    values = {kappa_symbol(i): table[i].to_sympy() for i in generators}
    return expand(expression.subs(values) - table[index].to_sympy()) == 0


def _check_characteristic_polynomial(space: FibrationSpace, table: KappaTable, elementary: List[Any], rank: int) -> None:
    """The coefficients ``(−1)^m e_m`` must match the characteristic polynomial of ``e``."""
    polynomial = space.intersection.characteristic_polynomial(space.euler_class)
    values = {kappa_symbol(i): table[i].to_sympy() for i in range(1, rank + 1)}
    for m, coefficient in enumerate(polynomial.coefficients):
        expected = expand(((-1) ** m) * elementary[m].subs(values))
        if expand(coefficient.to_sympy() - expected) != 0:
            raise EulerRingException("Newton identities disagree with the characteristic polynomial", m)


# algebraic independence


class IndependenceCertificate:
    """
    Verdict on the algebraic independence of ``n`` polynomials in ``n`` variables.

    A non-zero Jacobian determinant (symbolic, or evaluated at `point`) certifies
    independence; "dependent" is only reported when the symbolic determinant vanishes.
    """

    def __init__(
        self,
        verdict: str,
        method: str,
        certificate: str,
        point: Optional[Dict[str, int]] = None,
        seed: Optional[int] = None,
        attempts: int = 0,
    ) -> None:
        self.verdict = verdict
        self.method = method
        self.certificate = certificate
        self.point = point
        self.seed = seed
        self.attempts = attempts

    def __bool__(self) -> bool:
        return self.verdict == INDEPENDENT

    def to_json(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "certificate": self.certificate,
            "point": self.point,
            "seed": self.seed,
            "attempts": self.attempts,
        }

    def __str__(self) -> str:
        return str(self.to_json())

    def __repr__(self) -> str:
        return str(self)


def _determinant(matrix: Matrix) -> Any:
    dm = DomainMatrix.from_Matrix(matrix)
    return dm.domain.to_sympy(dm.det())


def independence_certificate(
    polys: Sequence[AlgElement],
    variables: Sequence[str],
    seed: Optional[int] = None,
) -> IndependenceCertificate:
    """
    Look for a non-zero Jacobian determinant ``det(∂p_i/∂v_j)``.

    Up to ``EULERRING_SYMBOLIC_JACOBIAN_MAX`` variables the determinant is expanded
    symbolically; beyond that it is evaluated at random integer points in
    ``{−R..R}`` (``EULERRING_EVALUATION_RANGE``), ``EULERRING_EVALUATION_RETRIES`` times.

    Args:
        polys (Sequence[AlgElement]): The polynomials.
        variables (Sequence[str]): Generator names to differentiate by.
        seed (Optional[int]): Seed of the evaluation points (default ``EULERRING_SEED``).

    Raises:
        DegreeError: If the numbers of polynomials and variables differ.
    """
    if len(polys) != len(variables):
        raise DegreeError("need as many polynomials as variables", (len(polys), len(variables)))
    seed = getattr(settings, "EULERRING_SEED", 20240712) if seed is None else seed
    symbols = [Symbol(v) for v in variables]
    jacobian = Matrix([[diff(p.to_sympy(), s) for s in symbols] for p in polys])
    if len(symbols) <= getattr(settings, "EULERRING_SYMBOLIC_JACOBIAN_MAX", 4):
        det = expand(_determinant(jacobian)) if symbols else Integer(1)
        if det == 0:
            return IndependenceCertificate(DEPENDENT, "symbolic", "no certificate found", seed=seed)
        return IndependenceCertificate(INDEPENDENT, "symbolic", str(det), seed=seed)
    bound = getattr(settings, "EULERRING_EVALUATION_RANGE", 20)
    retries = getattr(settings, "EULERRING_EVALUATION_RETRIES", 5)
    rng = random.Random(seed)
    for attempt in range(1, retries + 1):
        point = {v: rng.randint(-bound, bound) for v in variables}
        value = _determinant(jacobian.subs({Symbol(v): Integer(c) for v, c in point.items()}))
        if value != 0:
            return IndependenceCertificate(INDEPENDENT, "evaluation", str(value), point, seed, attempt)
    logger.warning("no non-zero Jacobian evaluation in %d attempts", retries)
    return IndependenceCertificate(INCONCLUSIVE, "evaluation", "no certificate found", seed=seed, attempts=retries)


# leading terms for CP^n


class LeadingTermReport:
    """Individual checks ``{step, index, expected, actual, passed}``."""

    def __init__(self, n: int, checks: List[Dict[str, Any]]) -> None:
        self.n = n
        self.checks = checks

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> List[Dict[str, Any]]:
        return [c for c in self.checks if not c["passed"]]

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "passed": self.passed, "checks": self.checks}

    def __str__(self) -> str:
        return str(self.to_json())

    def __repr__(self) -> str:
        return str(self)


def leading_term_checks(n: int, table: Optional[KappaTable] = None) -> LeadingTermReport:
    """
    Leading terms of fibre integrals and κ-classes of ``CP^n`` modulo decomposables.

    Reduction modulo ``(B⁺)²`` keeps the linear part. Checked: ``π_!(x^{n+k}) ≡ x_k``
    for ``2 <= k <= n+1``; the ``x_{n+1}^{i−1}``-coefficient of ``κ_i`` is
    ``≡ i(n+1)^i(n−i)·x_{n+1−i}`` for ``1 <= i <= n−1``; ``κ_{n+1}`` contains
    ``(n+1)^{n+2}·x_{n+1}^n``.

    Raises:
        DegreeError: If ``n < 2`` or ``n`` exceeds ``EULERRING_LEADING_TERM_MAX_N``.
    """
    if n < 2:
        raise DegreeError("leading term checks need n >= 2", n)
    bound = getattr(settings, "EULERRING_LEADING_TERM_MAX_N", 6)
    if n > bound:
        raise DegreeError("n exceeds EULERRING_LEADING_TERM_MAX_N", n)
    space = table.space if table is not None else ProjectiveSpace(n)
    table = table or KappaTable(space, {})
    ci = space.intersection
    base = ci.base
    x = ci.fibre_variable(0)
    top = space.top_generator()
    checks = []

    def record(step: int, index: int, expected: AlgElement, actual: AlgElement) -> None:
        checks.append(
            {
                "step": step,
                "index": index,
                "expected": str(expected),
                "actual": str(actual),
                "passed": expected == actual,
            }
        )

    for k in range(2, n + 2):
        value = ci.fibre_integrate(ci.power(x, n + k))
        record(1, k, base.gen(f"x_{k}"), value.linear_part())
    for i in range(1, n):
        value = table[i]
        if value.max_exponent(top) > i - 1:
            record(2, i, base.zero(), value.coefficient_of_power(top, value.max_exponent(top)))
            continue
        coefficient = value.coefficient_of_power(top, i - 1)
        expected = base.gen(f"x_{n + 1 - i}").scale(i * (n + 1) ** i * (n - i))
        record(2, i, expected, coefficient.linear_part())
    power = base.generator_monomial(base.index(top), n)
    value = table[n + 1]
    record(3, n + 1, base.monomial(power, (n + 1) ** (n + 2)), base.monomial(power, value.coefficient(power)))
    report = LeadingTermReport(n, checks)
    if not report:
        logger.warning("leading term checks failed for CP^%d: %s", n, report.failures())
    return report


# report


class EulerRingReport:
    """
    Everything known about the Euler ring of a space.

    Args:
        space (FibrationSpace): The fibre.
        table (KappaTable): Computed κ-classes.
        generators (List[int]): Indices of the generating classes.
        relations (List[Relation]): Relations expressing the other classes.
        independence (Optional[IndependenceCertificate]): Certificate for the generators.
        leading_terms (Optional[LeadingTermReport]): Only for ``CP^n`` with ``n >= 2``.
        seed (int): Seed used for random evaluation points.
    """

    def __init__(
        self,
        space: FibrationSpace,
        table: KappaTable,
        generators: List[int],
        relations: List[Relation],
        independence: Optional[IndependenceCertificate],
        leading_terms: Optional[LeadingTermReport],
        seed: int,
    ) -> None:
        self.space = space
        self.table = table
        self.generators = generators
        self.relations = relations
        self.independence = independence
        self.leading_terms = leading_terms
        self.seed = seed

    @property
    def identity_component_only(self) -> bool:
        return self.space.intersection is None

    @property
    def presentation(self) -> str:
        if not self.generators:
            return "Q"
        return "Q[" + ", ".join(f"kappa_{i}" for i in self.generators) + "]"

    def to_json(self) -> Dict[str, Any]:
        data = {
            "space": self.space.label,
            "d": self.space.fibre_dimension,
            "kappas": self.table.to_json(),
            "relations": [str(r) for r in self.relations],
            "independence": self.independence.to_json() if self.independence else None,
            "presentation": self.presentation,
            "leading_terms": self.leading_terms.to_json() if self.leading_terms else None,
            "seed": self.seed,
        }
        if self.identity_component_only:
            data["identity_component_only"] = True
            data["euler_class"] = str(self.space.euler_class)
        return data

    def __str__(self) -> str:
        return str(self.to_json())

    def __repr__(self) -> str:
        return str(self)


def euler_ring_report(space: FibrationSpace, max_index: Optional[int] = None, seed: Optional[int] = None) -> EulerRingReport:
    """
    Assemble the κ-table, the relations, the independence certificate and the
    presentation of the Euler ring of `space`.

    For odd sphere products the result describes the identity component only: the
    Euler class vanishes, so does every ``κ_i`` and the ring is ``Q``.
    """
    seed = getattr(settings, "EULERRING_SEED", 20240712) if seed is None else seed
    ci = space.intersection
    if max_index is None:
        max_index = ci.rank + 3 if ci is not None else 3
    table = kappa_table(space, max_index)
    relations = ch_relations(space, max_index, table)
    generators = presentation_generators(space)
    independence = None
    leading = None
    if generators:
        independence = independence_certificate([table[i] for i in generators], space.base.names, seed)
    if isinstance(space, ProjectiveSpace) and 2 <= space.n <= getattr(settings, "EULERRING_LEADING_TERM_MAX_N", 6):
        leading = leading_term_checks(space.n, table)
    report = EulerRingReport(space, table, generators, relations, independence, leading, seed)
    logger.debug("Euler ring of %s: %s", space, report.presentation)
    return report
