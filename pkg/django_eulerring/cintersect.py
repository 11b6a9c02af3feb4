"""Complete intersections ``E = B[x_1..x_n]/(f_1..f_n)`` over a polynomial base.

Each relation has the shape ``f_j = x_j^{m_j} − r_j``. Terms of ``r_j`` either carry a
positive-degree base factor or are pure fibre monomials lexicographically below
``x_j^{m_j}``. Rewriting ``x_j^{m_j} → r_j`` then terminates and the monomials
``x^α`` with ``α < m`` form a basis of ``E`` as a ``B``-module.
"""

import logging
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Dummy, Matrix
from sympy.polys.domains import QQ

from .exceptions import (
    DegeneratePairingError,
    DegreeError,
    EulerRingException,
    EulerRingFieldTypeError,
    ModelShapeError,
)
from .gcalg import AlgElement, FreeGCAlgebra, Generator, Monomial, partial
from .linalg import rank

logger = logging.getLogger(__name__)

ORIENTATIONS = ("top", "det")

Reduction = Dict[Monomial, Dict[Monomial, Any]]


def _accumulate(target: Dict[Monomial, Any], key: Monomial, value: Any) -> None:
    total = target.get(key, QQ.zero) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class CompleteIntersection:
    """
    A complete intersection over a polynomial base algebra with zero differential.

    Args:
        base (FreeGCAlgebra): The base ``B``; every generator has even degree.
        fibre_generators (Sequence[Generator]): The fibre variables ``x_j`` (even degrees).
        relations (Sequence[AlgElement]): ``f_j``, one per fibre variable, written in any
            algebra whose generator names belong to ``B`` and the fibre variables.
        orientation (str): ``"top"`` sets ``ε(top monomial) = 1``; ``"det"`` scales so
            that the fibre restriction of the Jacobian determinant integrates to ``χ``.

    Raises:
        ModelShapeError: If the base is not polynomial or a relation has the wrong shape.
        DegreeError: If a fibre variable has odd degree or a relation is inhomogeneous.
    """

    def __init__(
        self,
        base: FreeGCAlgebra,
        fibre_generators: Sequence[Generator],
        relations: Sequence[AlgElement],
        orientation: str = "top",
    ) -> None:
        EulerRingFieldTypeError.if_not_validated("CompleteIntersection", "base", base, FreeGCAlgebra)
        if not base.is_polynomial:
            raise ModelShapeError("the base of a complete intersection must be polynomial", str(base))
        if orientation not in ORIENTATIONS:
            raise EulerRingException(f"orientation must be one of {ORIENTATIONS}", orientation)
        fibre_generators = list(fibre_generators)
        for g in fibre_generators:
            if g.is_odd:
                raise DegreeError("fibre variables must have even degree", g.name)
        if len(relations) != len(fibre_generators):
            raise ModelShapeError("need one relation per fibre variable")
        self.base = base
        self.fibre = FreeGCAlgebra(fibre_generators)
        self.ring = FreeGCAlgebra(list(base.generators) + fibre_generators)
        self.orientation = orientation
        self._nbase = base.ngens
        self.relations: List[AlgElement] = []
        self.powers: List[int] = []
        self._remainders: List[List[Tuple[Monomial, Monomial, Any]]] = []
        for j, relation in enumerate(relations):
            self._add_relation(j, relation.relabel(self.ring))
        self.basis: List[Monomial] = sorted(
            product(*[range(m) for m in self.powers]),
            key=lambda alpha: (self.fibre.monomial_degree(alpha), alpha),
        )
        self.top: Monomial = tuple(m - 1 for m in self.powers)
        self.fibre_dimension = self.fibre.monomial_degree(self.top)
        self._cache: Dict[Monomial, Reduction] = {}
        self._euler: Optional[AlgElement] = None
        self._epsilon: Optional[Any] = None
        logger.debug(
            "complete intersection over %s with powers %s, rank %d",
            base,
            self.powers,
            len(self.basis),
        )

    def _add_relation(self, j: int, relation: AlgElement) -> None:
        if relation.is_zero():
            raise ModelShapeError("relation is zero", j)
        degree = relation.homogeneous_degree()
        i = self._nbase + j
        g = self.ring.generators[i]
        if degree % g.degree:
            raise ModelShapeError(f"relation {relation} is not a power of `{g.name}` plus lower terms")
        m = degree // g.degree
        power = self.ring.generator_monomial(i, m)
        if relation.coefficient(power) != 1:
            raise ModelShapeError(f"relation {relation} must contain `{g.name}^{m}` with coefficient 1")
        remainder = self.ring.monomial(power) - relation
        pure = tuple(power[self._nbase :])
        terms = []
        for mono, coeff in remainder.terms.items():
            base_part, fibre_part = mono[: self._nbase], mono[self._nbase :]
            if not any(base_part) and not fibre_part < pure:
                raise ModelShapeError(
                    f"term `{self.ring.format_monomial(mono)}` of {relation} does not lower `{g.name}^{m}`"
                )
            terms.append((base_part, fibre_part, coeff))
        self.relations.append(relation)
        self.powers.append(m)
        self._remainders.append(terms)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def euler_characteristic(self) -> int:
        chi = 1
        for m in self.powers:
            chi *= m
        return chi

    def basis_element(self, alpha: Monomial) -> AlgElement:
        return self.ring.monomial(self.base.unit_monomial() + tuple(alpha))

    def fibre_variable(self, j: int) -> AlgElement:
        return self.ring.gen(self.fibre.generators[j].name)

    def to_ring(self, element: AlgElement) -> AlgElement:
        if element.algebra is self.ring or element.algebra == self.ring:
            return element
        return element.relabel(self.ring)

    # normal forms

    def _reduce(self, alpha: Monomial) -> Reduction:
        cached = self._cache.get(alpha)
        if cached is not None:
            return cached
        unit = self.base.unit_monomial()
        j = next((j for j, (a, m) in enumerate(zip(alpha, self.powers)) if a >= m), None)
        if j is None:
            result: Reduction = {alpha: {unit: QQ.one}}
        else:
            rest = list(alpha)
            rest[j] -= self.powers[j]
            result = {}
            for base_part, fibre_part, coeff in self._remainders[j]:
                shifted = tuple(a + b for a, b in zip(rest, fibre_part))
                for beta, poly in self._reduce(shifted).items():
                    target = result.setdefault(beta, {})
                    for bmono, bc in poly.items():
                        key = tuple(a + b for a, b in zip(bmono, base_part))
                        _accumulate(target, key, coeff * bc)
            result = {beta: poly for beta, poly in result.items() if poly}
        self._cache[alpha] = result
        return result

    def normal_form(self, element: AlgElement) -> AlgElement:
        """
        The unique representative with every fibre exponent below its power.

        Args:
            element (AlgElement): An element of the ring (or of an algebra whose
                generators belong to it).

        Returns:
            AlgElement: The normal form, in the ring ``B[x]``.
        """
        element = self.to_ring(element)
        nb = self._nbase
        terms: Dict[Monomial, Any] = {}
        for mono, coeff in element.terms.items():
            base_part = mono[:nb]
            for alpha, poly in self._reduce(mono[nb:]).items():
                for bmono, bc in poly.items():
                    key = tuple(a + b for a, b in zip(base_part, bmono)) + alpha
                    _accumulate(terms, key, coeff * bc)
        return AlgElement._raw(self.ring, terms)

    def is_normal(self, element: AlgElement) -> bool:
        nb = self._nbase
        return all(
            all(a < m for a, m in zip(mono[nb:], self.powers))
            for mono in self.to_ring(element).terms
        )

    def multiply(self, a: AlgElement, b: AlgElement) -> AlgElement:
        return self.normal_form(self.to_ring(a) * self.to_ring(b))

    def power(self, element: AlgElement, exponent: int) -> AlgElement:
        """Iterated normal-form multiplication."""
        result = self.ring.one()
        element = self.normal_form(element)
        for _ in range(exponent):
            result = self.multiply(result, element)
        return result

    def coordinates(self, element: AlgElement) -> Dict[Monomial, AlgElement]:
        """Base coefficients of the normal form, keyed by basis monomial."""
        nb = self._nbase
        split: Dict[Monomial, Dict[Monomial, Any]] = {}
        for mono, coeff in self.normal_form(element).terms.items():
            split.setdefault(mono[nb:], {})[mono[:nb]] = coeff
        return {
            alpha: AlgElement._raw(self.base, split.get(alpha, {})) for alpha in self.basis
        }

    def coordinate(self, element: AlgElement, alpha: Monomial) -> AlgElement:
        return self.coordinates(element)[tuple(alpha)]

    def from_coordinates(self, coordinates: Dict[Monomial, AlgElement]) -> AlgElement:
        result = self.ring.zero()
        for alpha, b in coordinates.items():
            result = result + b.relabel(self.ring) * self.basis_element(alpha)
        return result

    def fibre_restriction(self, element: AlgElement) -> AlgElement:
        """Normal form with every positive-degree base monomial sent to zero."""
        nb = self._nbase
        return AlgElement._raw(
            self.ring,
            {m: c for m, c in self.normal_form(element).terms.items() if not any(m[:nb])},
        )

    def graded_basis(self, k: int) -> List[Monomial]:
        """Ring monomials ``b·x^α`` spanning ``E`` in degree `k` over the rationals."""
        out = []
        for alpha in self.basis:
            for bmono in self.base.graded_basis(k - self.fibre.monomial_degree(alpha)):
                out.append(bmono + alpha)
        return out

    def graded_dimension(self, k: int) -> int:
        return len(self.graded_basis(k))

    # structure

    def verify(self) -> "CompleteIntersection":
        """
        Check that the fibre restriction is a Poincaré duality algebra.

        Raises:
            DegeneratePairingError: If the top degree is not one-dimensional or the cup
                pairing into it is singular.
        """
        tops = [a for a in self.basis if self.fibre.monomial_degree(a) == self.fibre_dimension]
        if len(tops) != 1:
            raise DegeneratePairingError("fibre top degree is not one-dimensional", tops)
        gram = [[self._pairing(a, b) for b in self.basis] for a in self.basis]
        if rank(gram, len(self.basis)) != len(self.basis):
            raise DegeneratePairingError("cup pairing of the fibre is degenerate")
        return self

    def _pairing(self, a: Monomial, b: Monomial) -> Any:
        product_ = self.fibre_restriction(self.basis_element(a) * self.basis_element(b))
        return product_.coefficient(self.base.unit_monomial() + self.top)

    def jacobian(self) -> List[List[AlgElement]]:
        """``∂f_i/∂x_j`` for relations `i` and fibre variables `j`."""
        partials = [partial(self.ring, g.name) for g in self.fibre.generators]
        return [[d(f) for d in partials] for f in self.relations]

    def determinant(self, matrix: List[List[AlgElement]]) -> AlgElement:
        """Cofactor expansion along the first row, reduced to normal form."""
        n = len(matrix)
        if n == 0:
            return self.ring.one()
        if n == 1:
            return self.normal_form(matrix[0][0])
        total = self.ring.zero()
        for c in range(n):
            entry = matrix[0][c]
            if not entry:
                continue
            minor = [row[:c] + row[c + 1 :] for row in matrix[1:]]
            term = self.multiply(entry, self.determinant(minor))
            total = total + (term if c % 2 == 0 else -term)
        return total

    def euler_class(self) -> AlgElement:
        """The Jacobian determinant ``det(∂f_i/∂x_j)`` in normal form."""
        if self._euler is None:
            self._euler = self.determinant(self.jacobian())
        return self._euler

    def epsilon(self) -> Any:
        """``ε`` of the top basis monomial under the chosen orientation."""
        if self._epsilon is None:
            if self.orientation == "top":
                self._epsilon = QQ.one
            else:
                restricted = self.fibre_restriction(self.euler_class())
                c = restricted.coefficient(self.base.unit_monomial() + self.top)
                if not c:
                    raise DegeneratePairingError("fibre Jacobian determinant has no top component")
                self._epsilon = QQ(self.euler_characteristic) / c
        return self._epsilon

    def trace(self, element: AlgElement) -> AlgElement:
        """Trace of multiplication by `element` on the free ``B``-module ``E``."""
        element = self.normal_form(element)
        total = self.base.zero()
        for alpha in self.basis:
            total = total + self.coordinate(self.multiply(element, self.basis_element(alpha)), alpha)
        return total

    def trace_form(self) -> "TraceForm":
        return TraceForm(self)

    def fibre_integrate(self, element: AlgElement) -> AlgElement:
        """``ε(top)`` times the coefficient of the top basis monomial."""
        return self.coordinate(element, self.top).scale(self.epsilon())

    def multiplication_matrix(self, element: AlgElement) -> List[List[AlgElement]]:
        """Column ``β`` holds the coordinates of ``element·x^β``."""
        element = self.normal_form(element)
        columns = [
            self.coordinates(self.multiply(element, self.basis_element(beta)))
            for beta in self.basis
        ]
        return [[column[alpha] for column in columns] for alpha in self.basis]

    def characteristic_polynomial(self, element: AlgElement) -> "CharacteristicPolynomial":
        """
        Characteristic polynomial of multiplication by `element`.

        Raises:
            EulerRingException: If Cayley–Hamilton fails to reduce to zero in ``E``.
        """
        matrix = Matrix(
            [[entry.to_sympy() for entry in row] for row in self.multiplication_matrix(element)]
        )
        t = Dummy("t")
        coefficients = [
            AlgElement.from_sympy(self.base, c) for c in matrix.charpoly(t).all_coeffs()
        ]
        polynomial = CharacteristicPolynomial(self, coefficients)
        if polynomial(element):
            raise EulerRingException("Cayley–Hamilton identity fails", str(element))
        return polynomial

    def to_json(self) -> Dict[str, Any]:
        return {
            "base": self.base.names,
            "fibre": [{"name": g.name, "degree": g.degree} for g in self.fibre.generators],
            "relations": [r.to_json() for r in self.relations],
            "basis": [self.fibre.format_monomial(a) for a in self.basis],
            "euler_class": self.euler_class().to_json(),
            "traces": {
                self.fibre.format_monomial(a): str(self.trace(self.basis_element(a)))
                for a in self.basis
            },
        }

    def __str__(self) -> str:
        return f"{self.base.names}[{', '.join(self.fibre.names)}]/({', '.join(map(str, self.relations))})"

    def __repr__(self) -> str:
        return str(self)


class TraceForm:
    """The ``B``-linear functional ``Tr_{E/B}``."""

    def __init__(self, intersection: CompleteIntersection) -> None:
        self.intersection = intersection

    def __call__(self, element: AlgElement) -> AlgElement:
        return self.intersection.trace(element)


class CharacteristicPolynomial:
    """A monic polynomial ``t^N + c_1 t^{N−1} + ... + c_N`` with coefficients in ``B``."""

    def __init__(self, intersection: CompleteIntersection, coefficients: List[AlgElement]) -> None:
        self.intersection = intersection
        self.coefficients = coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, element: AlgElement) -> AlgElement:
        """Evaluate at `element` inside ``E`` (Horner scheme, normal forms throughout)."""
        ci = self.intersection
        result = ci.ring.zero()
        for c in self.coefficients:
            result = ci.multiply(result, element) + c.relabel(ci.ring)
        return ci.normal_form(result)

    def __str__(self) -> str:
        n = self.degree
        return " + ".join(f"({c})*t^{n - k}" for k, c in enumerate(self.coefficients) if c)

    def __repr__(self) -> str:
        return str(self)
