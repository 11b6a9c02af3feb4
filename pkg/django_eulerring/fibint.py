"""Chain-level fibre integration, the Umkehr map of the diagonal and fibrewise Euler classes.

``Π`` is a map of ``B``-modules from the total algebra of a relative model to the base,
lowering degree by the fibre dimension ``d``. It is written on monomials ``b·a`` (base
part first, fibre part second) as ``Π(b·a) = b·Π(a)``.
"""

import logging
from typing import Any, Dict, List, Optional, Tuple

from django.conf import settings
from sympy.polys.domains import QQ

from .cemodel import RelativeSullivanModel
from .cintersect import CompleteIntersection
from .exceptions import DegeneratePairingError, ModelShapeError
from .gcalg import AlgElement, Monomial
from .linalg import qq, qq_str, rank, solve

logger = logging.getLogger(__name__)

TensorTerms = Dict[Tuple[Monomial, Monomial], Any]


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class FibreIntegration:
    """
    Base class for ``Π``; subclasses define the value on a pure fibre monomial.

    Args:
        model (RelativeSullivanModel): The relative model.
        dimension (int): The fibre dimension ``d``.
        orientation (Any): ``ε`` of the fibre fundamental class.
    """

    def __init__(self, model: RelativeSullivanModel, dimension: int, orientation: Any = 1) -> None:
        self.model = model
        self.dimension = dimension
        self.orientation = qq(orientation)
        self._nbase = model.base.ngens

    def fibre_value(self, fibre_mono: Monomial) -> AlgElement:
        raise NotImplementedError

    def __call__(self, element: AlgElement) -> AlgElement:
        model = self.model
        element = element if element.algebra == model.total else model.include(element)
        nb = self._nbase
        result = model.base.zero()
        for mono, coeff in element.terms.items():
            value = self.fibre_value(mono[nb:])
            if value:
                result = result + AlgElement._raw(model.base, {mono[:nb]: coeff}) * value
        return result

    def chain_map_failures(self, up_to: Optional[int] = None) -> List[str]:
        """Total monomials ``m`` of degree <= `up_to` with ``Π(D m) != d_B Π(m)``."""
        if up_to is None:
            up_to = self.dimension + getattr(settings, "EULERRING_PI_CHECK_EXTRA_DEGREE", 8)
        model = self.model
        failures = []
        for k in range(up_to + 1):
            for mono in model.total.graded_basis(k):
                m = model.total.monomial(mono)
                if self(model.differential(m)) != model.base_differential(self(m)):
                    failures.append(model.total.format_monomial(mono))
        return failures

    def verify(self, up_to: Optional[int] = None) -> "FibreIntegration":
        """
        Raises:
            ModelShapeError: If ``Π`` is not a chain map (witness: first failing monomial).
        """
        failures = self.chain_map_failures(up_to)
        if failures:
            raise ModelShapeError("fibre integration is not a chain map", failures[0])
        return self


class FiniteFibreIntegration(FibreIntegration):
    """``Π(b·x_S) = ε·b`` when ``x_S`` is the product of all fibre generators, 0 otherwise."""

    def __init__(self, model: RelativeSullivanModel, orientation: Any = 1) -> None:
        super().__init__(model, model.fibre_dimension, orientation)
        self.top: Monomial = (1,) * model.fibre.ngens
        self._top_value = model.base.scalar(self.orientation)

    def fibre_value(self, fibre_mono: Monomial) -> AlgElement:
        if tuple(fibre_mono) == self.top:
            return self._top_value
        return self.model.base.zero()

    def epsilon(self, element: AlgElement) -> Any:
        """``ε`` on the fibre algebra: the coefficient of the top monomial times the orientation."""
        return element.coefficient(self.top) * self.orientation

    def values(self) -> Dict[str, str]:
        fibre = self.model.fibre
        out = {}
        for k in range(self.dimension + 1):
            for mono in fibre.graded_basis(k):
                out[fibre.format_monomial(mono)] = str(self.fibre_value(mono))
        return out


class EvenSphereFibreIntegration(FibreIntegration):
    """
    ``Π`` for the universal ``S^{2n}`` model ``D(y) = x² − z``:
    ``Π(z^a y x^k) = 0``, ``Π(z^a x^{2k}) = 0``, ``Π(z^a x^{2k+1}) = z^{a+k}``.
    """

    def __init__(self, model: RelativeSullivanModel, orientation: Any = 1) -> None:
        if model.fibre.names != ["x", "y"] or model.base.ngens != 1:
            raise ModelShapeError("not an even sphere model", str(model))
        super().__init__(model, model.fibre.generator("x").degree, orientation)

    def fibre_value(self, fibre_mono: Monomial) -> AlgElement:
        k, y = fibre_mono
        base = self.model.base
        if y or k % 2 == 0:
            return base.zero()
        return base.monomial(((k - 1) // 2,), self.orientation)


def _check_minimal(model: RelativeSullivanModel) -> None:
    if model.fibre_restriction().has_linear_part():
        raise ModelShapeError("fibre model is not minimal")


def build_pi(model: RelativeSullivanModel, orientation: Any = 1) -> FiniteFibreIntegration:
    """
    Fibre integration for a model whose fibre algebra is finite-dimensional.

    Args:
        model (RelativeSullivanModel): Model with only odd fibre generators.
        orientation (Any): ``ε`` of the product of all fibre generators.

    Raises:
        ModelShapeError: If the fibre is infinite-dimensional or not minimal, or if
            ``Π`` is not a chain map.
    """
    if not model.fibre_is_finite:
        raise ModelShapeError("fibre algebra is infinite-dimensional; use even_sphere_pi")
    _check_minimal(model)
    pi = FiniteFibreIntegration(model, orientation).verify()
    logger.debug("fibre integration of degree %d built", pi.dimension)
    return pi


def even_sphere_pi(model: RelativeSullivanModel, orientation: Any = 1) -> EvenSphereFibreIntegration:
    """Fibre integration for the universal even sphere model."""
    _check_minimal(model)
    return EvenSphereFibreIntegration(model, orientation).verify()


# uniqueness


def hom_homology_dimension(model: RelativeSullivanModel, k: int) -> int:
    """
    Dimension of the homology of ``Hom_B(E, B)`` in degree ``−k``.

    A map ``φ`` of degree ``−k`` is given by the values ``φ(a_j) ∈ B^{|a_j|−k}`` on the
    fibre monomials ``a_j``; ``φ(b·a) = (−1)^{|φ||b|} b·φ(a)`` and
    ``∂φ = d_B∘φ − (−1)^{|φ|} φ∘D``.
    """
    if not model.fibre_is_finite:
        raise ModelShapeError("fibre algebra is infinite-dimensional")
    fibre = model.fibre
    fibre_monos = [m for n in range(sum(fibre.degrees) + 1) for m in fibre.graded_basis(n)]

    def coordinates(shift: int) -> List[Tuple[int, Monomial]]:
        return [
            (j, b)
            for j, a in enumerate(fibre_monos)
            for b in model.base.graded_basis(fibre.monomial_degree(a) - shift)
        ]

    def boundary_matrix(shift: int) -> Tuple[List[List[Any]], int]:
        source = coordinates(shift)
        target = coordinates(shift - 1)
        position = {key: r for r, key in enumerate(target)}
        rows = [[QQ.zero] * len(source) for _ in target]
        nb = model.base.ngens
        images = [
            [
                (mono[:nb], mono[nb:], coeff)
                for mono, coeff in model.differential(model.total.monomial((0,) * nb + a)).terms.items()
            ]
            for a in fibre_monos
        ]
        index = {a: j for j, a in enumerate(fibre_monos)}
        for c, (j, bmono) in enumerate(source):
            b = model.base.monomial(bmono)
            value: Dict[Tuple[int, Monomial], Any] = {}
            for mono, coeff in model.base_differential(b).terms.items():
                value[(j, mono)] = value.get((j, mono), QQ.zero) + coeff
            for ell in range(len(fibre_monos)):
                for base_part, fibre_part, coeff in images[ell]:
                    if index.get(fibre_part) != j:
                        continue
                    prime = model.base.monomial(base_part)
                    sign = _sign(shift * model.base.monomial_degree(base_part)) * _sign(shift + 1)
                    for mono, c2 in (prime * b).terms.items():
                        key = (ell, mono)
                        value[key] = value.get(key, QQ.zero) + sign * coeff * c2
            for key, v in value.items():
                if v:
                    rows[position[key]][c] = v
        return rows, len(source)

    cycles_rows, ncols = boundary_matrix(k)
    cycles = ncols - rank(cycles_rows, ncols)
    boundary_rows, bcols = boundary_matrix(k + 1)
    return cycles - rank(boundary_rows, bcols)


def uniqueness_dimension(model: RelativeSullivanModel, degree_bound: Optional[int] = None) -> int:
    """
    Dimension of the top non-vanishing homology of ``Hom_B(E, B)``.

    Degrees ``−k`` are scanned from ``k = degree_bound`` (default: the fibre dimension)
    downwards; the first non-zero dimension is returned, 0 if there is none.
    """
    if not model.fibre_is_finite:
        raise ModelShapeError("fibre algebra is infinite-dimensional")
    bound = model.fibre_dimension if degree_bound is None else degree_bound
    for k in range(bound, -1, -1):
        dimension = hom_homology_dimension(model, k)
        if dimension:
            logger.debug("Hom homology is %d-dimensional in degree %d", dimension, -k)
            return dimension
    return 0


# bar-Π and the Umkehr map of the diagonal


def _fibre_monomials(pi: FiniteFibreIntegration) -> List[Monomial]:
    fibre = pi.model.fibre
    return [m for n in range(pi.dimension + 1) for m in fibre.graded_basis(n)]


def bar_pi_matrix(pi: FiniteFibreIntegration) -> List[List[Any]]:
    """Entry ``(e, e')`` is ``(−1)^{d + d|e|} Π(e·e')`` over the fibre monomials."""
    fibre = pi.model.fibre
    d = pi.dimension
    monos = _fibre_monomials(pi)
    rows = []
    for e in monos:
        sign = _sign(d + d * fibre.monomial_degree(e))
        rows.append(
            [sign * pi.epsilon(fibre.monomial(e) * fibre.monomial(f)) for f in monos]
        )
    return rows


class UmkehrResult:
    """``Δ_!(1)`` in ``E ⊗_B E`` and the fibrewise Euler class ``μ(Δ_!(1))``."""

    def __init__(self, pi: FiniteFibreIntegration, delta_shriek_one: TensorTerms, euler: AlgElement) -> None:
        self.pi = pi
        self.delta_shriek_one = delta_shriek_one
        self.euler = euler

    def shape_failures(self) -> List[str]:
        """Terms that are not ``±x_{S_1} ⊗ x_{S_2}`` with ``S_1 ⊔ S_2`` the whole fibre."""
        n = self.pi.model.fibre.ngens
        failures = []
        for (p, q), c in self.delta_shriek_one.items():
            disjoint = all(a + b == 1 for a, b in zip(p, q)) and len(p) == n
            if not disjoint or c not in (1, -1):
                failures.append(self._format(p, q, c))
        return failures

    def _format(self, p: Monomial, q: Monomial, c: Any) -> str:
        fibre = self.pi.model.fibre
        return f"{qq_str(c)}*{fibre.format_monomial(p)}⊗{fibre.format_monomial(q)}"

    def to_json(self) -> Dict[str, Any]:
        return {
            "delta_shriek_one": [self._format(p, q, c) for (p, q), c in sorted(self.delta_shriek_one.items())],
            "euler": self.euler.to_json(),
        }

    def __str__(self) -> str:
        return " + ".join(self._format(p, q, c) for (p, q), c in sorted(self.delta_shriek_one.items()))

    def __repr__(self) -> str:
        return str(self)


def umkehr_euler(pi: FiniteFibreIntegration, koszul: bool = True) -> UmkehrResult:
    """
    Solve ``bar(Π⊗Π)(Δ_!(1)) = Δ*(bar-Π(1))`` for ``Δ_!(1)``.

    Writing ``Δ_!(1) = Σ c_pq a_p ⊗ a_q``, the equation tested on ``a_j ⊗ a_l`` reads
    ``Σ c_pq (−1)^{|a_q||a_j|} (Π⊗Π)(a_p a_j ⊗ a_q a_l) = (−1)^d Π(a_j a_l)`` with
    ``(Π⊗Π)(u ⊗ v) = (−1)^{d|u|} Π(u) Π(v)``.

    Args:
        pi (FiniteFibreIntegration): Fibre integration of a finite fibre.
        koszul (bool): Apply the Koszul sign when multiplying tensors. Only switched off
            to check that the suite notices a wrong sign.

    Raises:
        DegeneratePairingError: If the linear system is singular or inconsistent.
    """
    fibre = pi.model.fibre
    d = pi.dimension
    monos = _fibre_monomials(pi)
    degree = fibre.monomial_degree
    pairs = [(p, q) for p in monos for q in monos if degree(p) + degree(q) == d]
    rows = []
    target = []
    for j, ell in pairs:
        row = []
        for p, q in pairs:
            u = fibre.monomial(p) * fibre.monomial(j)
            v = fibre.monomial(q) * fibre.monomial(ell)
            entry = pi.epsilon(u) * pi.epsilon(v) * _sign(d * degree(p) + d * degree(j)) if u and v else QQ.zero
            if koszul:
                entry = entry * _sign(degree(q) * degree(j))
            row.append(entry)
        rows.append(row)
        target.append(_sign(d) * pi.epsilon(fibre.monomial(j) * fibre.monomial(ell)))
    if rank(rows, len(pairs)) != len(pairs):
        raise DegeneratePairingError("bar(Π⊗Π) is singular on the fibre coordinates")
    solution = solve(rows, len(pairs), target)
    if solution is None:
        raise DegeneratePairingError("no solution for the Umkehr class")
    delta = {pair: c for pair, c in zip(pairs, solution) if c}
    euler = fibre.zero()
    for (p, q), c in delta.items():
        euler = euler + (fibre.monomial(p) * fibre.monomial(q)).scale(c)
    result = UmkehrResult(pi, delta, euler.relabel(pi.model.total))
    logger.debug("Umkehr class %s, Euler class %s", result, result.euler)
    return result


# Leray–Hirsch


def _top_index(ci: CompleteIntersection) -> Monomial:
    tops = [a for a in ci.basis if ci.fibre.monomial_degree(a) == ci.fibre_dimension]
    if len(tops) != 1:
        raise ModelShapeError("the module basis has no unique top element", tops)
    return tops[0]


def lh_fibre_integrate(ci: CompleteIntersection, element: AlgElement, orientation: Optional[Any] = None) -> AlgElement:
    """
    ``π_!(Σ b_i e_i) = ε(e_top)·b_top`` for the module basis of `ci`.

    Args:
        ci (CompleteIntersection): The total cohomology as a free module.
        element (AlgElement): Any element of the ring.
        orientation (Optional[Any]): ``ε`` of the top basis element (default: that of `ci`).
    """
    epsilon = ci.epsilon() if orientation is None else qq(orientation)
    return ci.coordinate(element, _top_index(ci)).scale(epsilon)


def _det(matrix: List[List[AlgElement]], one: AlgElement) -> AlgElement:
    n = len(matrix)
    if n == 0:
        return one
    if n == 1:
        return matrix[0][0]
    total = one - one
    for c in range(n):
        if not matrix[0][c]:
            continue
        minor = [row[:c] + row[c + 1 :] for row in matrix[1:]]
        term = matrix[0][c] * _det(minor, one)
        total = total + (term if c % 2 == 0 else -term)
    return total


def gram_matrix(ci: CompleteIntersection, orientation: Optional[Any] = None) -> List[List[AlgElement]]:
    """``G_ij = π_!(e_i e_j)`` over the base."""
    elements = [ci.basis_element(a) for a in ci.basis]
    return [
        [lh_fibre_integrate(ci, ci.multiply(a, b), orientation) for b in elements]
        for a in elements
    ]


def dual_basis(ci: CompleteIntersection, orientation: Optional[Any] = None) -> List[AlgElement]:
    """
    The elements ``e_i^#`` with ``π_!(e_i·e_j^#) = δ_ij``.

    Raises:
        DegeneratePairingError: If the Gram determinant is not a non-zero constant.
    """
    gram = gram_matrix(ci, orientation)
    one = ci.base.one()
    det = _det(gram, one)
    if not det or det.homogeneous_degree() != 0:
        raise DegeneratePairingError("intersection pairing is not invertible over the base", str(det))
    inverse_det = QQ.one / det.constant_term()
    n = len(gram)
    dual = []
    for j in range(n):
        element = ci.ring.zero()
        for ell in range(n):
            # inverse[ell][j] = (−1)^{ell+j} det(minor without row j, column ell) / det
            minor = [row[:ell] + row[ell + 1 :] for r, row in enumerate(gram) if r != j]
            cofactor = _det(minor, one).scale(inverse_det * _sign(ell + j))
            element = element + cofactor.relabel(ci.ring) * ci.basis_element(ci.basis[ell])
        dual.append(ci.normal_form(element))
    return dual


def lh_euler_class(ci: CompleteIntersection, orientation: Optional[Any] = None) -> AlgElement:
    """``e = Σ (−1)^{|e_i|} e_i·e_i^#`` in normal form."""
    total = ci.ring.zero()
    for alpha, sharp in zip(ci.basis, dual_basis(ci, orientation)):
        term = ci.multiply(ci.basis_element(alpha), sharp)
        total = total + (term if ci.fibre.monomial_degree(alpha) % 2 == 0 else -term)
    return total
