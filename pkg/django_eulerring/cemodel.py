"""Chevalley–Eilenberg relative Sullivan models of universal fibrations.

A finite-dimensional dg Lie algebra ``L`` acting on a minimal model ``(A, d_A)`` by
positive derivations gives the base ``C_CE(L)`` (one generator ``y_i`` of degree
``|l_i| + 1`` per basis element) and the total algebra on the base generators
followed by the generators of ``A``, with

    D(a) = d_A(a) − Σ_i y_i · l_i(a).
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from django.conf import settings
from sympy.polys.domains import QQ

from .cintersect import CompleteIntersection
from .derlie import DgLieAlgebra, positive_derivations, sub_dgla
from .exceptions import (
    DifferentialError,
    EulerRingException,
    ModelShapeError,
)
from .gcalg import (
    AlgElement,
    Derivation,
    Differential,
    FreeGCAlgebra,
    Generator,
    cohomology_dims,
    matrix_of,
)
from .linalg import nullspace, rank

logger = logging.getLogger(__name__)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class LieAction:
    """
    A dg Lie algebra acting on a model through derivations.

    Args:
        lie (DgLieAlgebra): The acting algebra.
        algebra (FreeGCAlgebra): The model ``A``.
        differential (Differential): ``d_A``.
        act (Sequence[Derivation]): The derivation of each basis element of `lie`.
    """

    def __init__(
        self,
        lie: DgLieAlgebra,
        algebra: FreeGCAlgebra,
        differential: Differential,
        act: Sequence[Derivation],
    ) -> None:
        if len(act) != lie.dimension:
            raise EulerRingException("one derivation per basis element is required")
        for theta, degree in zip(act, lie.degrees):
            if theta.algebra != algebra:
                raise EulerRingException("derivation acts on another algebra", str(theta))
            if not theta.is_zero() and theta.shift != -degree:
                raise EulerRingException("derivation degree does not match the basis", str(theta))
        self.lie = lie
        self.algebra = algebra
        self.differential = differential
        self.act = list(act)

    @classmethod
    def from_lie(cls, lie: DgLieAlgebra) -> "LieAction":
        """Use the derivations a derivation Lie algebra (or a sub of one) carries."""
        if lie.derivations is None or lie.model is None:
            raise ModelShapeError("dg Lie algebra carries no derivations")
        algebra, differential = lie.model
        return cls(lie, algebra, differential, lie.derivations)

    def image(self, vector: Dict[int, Any], degree: int) -> Derivation:
        result = Derivation(self.algebra, -degree)
        for i, a in vector.items():
            result = result + self.act[i].scale(a)
        return result

    def verify(self) -> "LieAction":
        """
        Check that the action is a map of dg Lie algebras.

        Raises:
            EulerRingException: If a bracket is not preserved (witness: the pair).
            DifferentialError: If ``∂`` is not sent to ``[d_A, -]`` (witness: the element).
        """
        lie = self.lie
        for i in range(lie.dimension):
            for j in range(lie.dimension):
                degree = lie.degree_of(i) + lie.degree_of(j)
                expected = self.act[i].bracket(self.act[j])
                if self.image(lie.bracket_basis(i, j), degree) != expected:
                    raise EulerRingException("action does not preserve the bracket", (lie.names[i], lie.names[j]))
        for i in range(lie.dimension):
            expected = self.differential.bracket(self.act[i])
            degree = max(lie.degree_of(i) - 1, 1)
            if self.image(lie.differential_basis(i), degree) != expected:
                raise DifferentialError("action does not commute with the differentials", lie.names[i])
        return self


class RelativeSullivanModel:
    """
    A relative Sullivan algebra ``(B, d_B) → (B ⊗ ΛV, D)``.

    The total algebra lists the base generators first, then the fibre generators.

    Args:
        base (FreeGCAlgebra): The base algebra.
        base_differential (Differential): ``d_B``.
        fibre (FreeGCAlgebra): The fibre model ``ΛV``.
        fibre_differential (Differential): Its differential.
        total (FreeGCAlgebra): The total algebra.
        differential (Differential): ``D``.
        lie (Optional[DgLieAlgebra]): The acting algebra the model was built from.
    """

    def __init__(
        self,
        base: FreeGCAlgebra,
        base_differential: Differential,
        fibre: FreeGCAlgebra,
        fibre_differential: Differential,
        total: FreeGCAlgebra,
        differential: Differential,
        lie: Optional[DgLieAlgebra] = None,
    ) -> None:
        if total.names != base.names + fibre.names:
            raise ModelShapeError("total generators must be base generators followed by fibre generators")
        self.base = base
        self.base_differential = base_differential
        self.fibre = fibre
        self.fibre_differential = fibre_differential
        self.total = total
        self.differential = differential
        self.lie = lie

    @classmethod
    def trivial(cls, base: FreeGCAlgebra, base_differential: Optional[Differential] = None) -> "RelativeSullivanModel":
        """The model of a fibration with a point as fibre."""
        base_differential = base_differential or Differential.zero(base)
        fibre = FreeGCAlgebra([])
        return cls(
            base,
            base_differential,
            fibre,
            Differential.zero(fibre),
            base,
            base_differential,
        )

    @property
    def base_names(self) -> List[str]:
        return self.base.names

    @property
    def fibre_names(self) -> List[str]:
        return self.fibre.names

    @property
    def fibre_is_finite(self) -> bool:
        return all(g.is_odd for g in self.fibre.generators)

    @property
    def fibre_dimension(self) -> Optional[int]:
        """Top degree of a finite fibre algebra."""
        if not self.fibre_is_finite:
            return None
        return sum(self.fibre.degrees)

    def include(self, element: AlgElement) -> AlgElement:
        """``π*``: a base element viewed in the total algebra."""
        return element.relabel(self.total)

    def restrict_to_fibre(self, element: AlgElement) -> AlgElement:
        """Send the base generators to zero."""
        return element.project(self.fibre)

    def fibre_restriction(self) -> Differential:
        return Differential(
            self.fibre,
            {g.name: self.restrict_to_fibre(self.differential.image(g.name)) for g in self.fibre.generators},
        )

    def verify(self) -> "RelativeSullivanModel":
        """
        Raises:
            DifferentialError: If ``D² != 0`` (witness: generator), if ``D`` differs from
                ``d_B`` on the base, or if the fibre restriction is not ``d_A``.
        """
        self.differential.check()
        for g in self.base.generators:
            if self.differential.image(g.name) != self.include(self.base_differential.image(g.name)):
                raise DifferentialError("D does not restrict to the base differential", g.name)
        restricted = self.fibre_restriction()
        for g in self.fibre.generators:
            if restricted.image(g.name) != self.fibre_differential.image(g.name):
                raise DifferentialError("fibre restriction differs from the fibre model", g.name)
        return self

    def cohomology_dims(self, up_to: int) -> List[int]:
        return cohomology_dims(self.total, self.differential, up_to)

    def generator_table(self) -> List[Dict[str, Any]]:
        table = []
        for g in self.total.generators:
            image = self.differential.image(g.name)
            table.append(
                {
                    "name": g.name,
                    "degree": g.degree,
                    "role": "base" if g.name in self.base else "fibre",
                    "differential": str(image),
                    "differential_json": image.to_json(),
                }
            )
        return table

    def to_json(self) -> Dict[str, Any]:
        return {
            "base": self.base.names,
            "fibre": self.fibre.names,
            "generators": self.generator_table(),
        }

    def __str__(self) -> str:
        return str({g["name"]: g["differential"] for g in self.generator_table()})

    def __repr__(self) -> str:
        return str(self)


def ce_base(lie: DgLieAlgebra, names: Optional[Sequence[str]] = None) -> Tuple[FreeGCAlgebra, Differential]:
    """
    The Chevalley–Eilenberg cochains ``C_CE(L; Q)`` as a free algebra.

    With ``∂l_i = Σ a_i^m l_m`` and ``[l_i, l_j] = Σ c_ij^m l_m``,

        d y_m = Σ_i (−1)^{|l_i|} a_i^m y_i + 1/2 Σ_{i,j} (−1)^{|l_i|(|l_j|+1)} c_ij^m y_i y_j.

    Args:
        lie (DgLieAlgebra): A finite-dimensional dg Lie algebra in degrees >= 1.
        names (Optional[Sequence[str]]): Generator names, ``y_1, y_2, ...`` by default.

    Raises:
        ModelShapeError: If the dimension exceeds ``EULERRING_MAX_LIE_DIMENSION``.
        DifferentialError: If ``d² != 0``.

    Returns:
        Tuple[FreeGCAlgebra, Differential]: The cochain algebra and its differential.
    """
    cap = getattr(settings, "EULERRING_MAX_LIE_DIMENSION", 40)
    if lie.dimension > cap:
        raise ModelShapeError(
            f"dg Lie algebra of dimension {lie.dimension} exceeds EULERRING_MAX_LIE_DIMENSION",
            cap,
        )
    names = list(names) if names is not None else [f"y_{i + 1}" for i in range(lie.dimension)]
    if len(names) != lie.dimension:
        raise EulerRingException("one name per basis element is required", names)
    algebra = FreeGCAlgebra([Generator(name, degree + 1) for name, degree in zip(names, lie.degrees)])
    y = algebra.gens()
    images = [algebra.zero() for _ in names]
    for i in range(lie.dimension):
        k = lie.degree_of(i)
        for m, a in lie.differential_basis(i).items():
            images[m] = images[m] + y[i].scale(a * _sign(k))
    half = QQ(1, 2)
    for (i, j), value in lie.brackets.items():
        sign = _sign(lie.degree_of(i) * (lie.degree_of(j) + 1))
        product_ = y[i] * y[j]
        for m, c in value.items():
            images[m] = images[m] + product_.scale(c * sign * half)
    d = Differential(algebra, dict(zip(names, images)))
    failure = d.square_failure()
    if failure is not None:
        raise DifferentialError("Chevalley–Eilenberg differential does not square to zero", failure)
    logger.debug("Chevalley–Eilenberg algebra %s", algebra)
    return algebra, d


def ce_total(action: LieAction, names: Optional[Sequence[str]] = None) -> RelativeSullivanModel:
    """
    The relative Sullivan model ``C_CE(L; Q) → C_CE(L; A)``.

    Args:
        action (LieAction): The action of ``L`` on ``(A, d_A)``.
        names (Optional[Sequence[str]]): Names of the base generators.

    Raises:
        EulerRingException: If the action does not preserve brackets.
        DifferentialError: If the action does not commute with the differentials, or if
            ``D² != 0`` (witness: generator).
    """
    action.verify()
    base, base_d = ce_base(action.lie, names)
    fibre = action.algebra
    clash = set(base.names) & set(fibre.names)
    if clash:
        raise EulerRingException("base and fibre generator names overlap", sorted(clash))
    total = FreeGCAlgebra(list(base.generators) + list(fibre.generators))
    images: Dict[str, AlgElement] = {g.name: base_d.image(g.name).relabel(total) for g in base.generators}
    for g in fibre.generators:
        image = action.differential.image(g.name).relabel(total)
        for y, theta in zip(base.names, action.act):
            value = theta.image(g.name)
            if value:
                image = image - total.gen(y) * value.relabel(total)
        images[g.name] = image
    differential = Differential(total, images)
    failure = differential.square_failure()
    if failure is not None:
        raise DifferentialError("total differential does not square to zero", failure)
    model = RelativeSullivanModel(base, base_d, fibre, action.differential, total, differential, action.lie)
    logger.debug("relative Sullivan model %s", model)
    return model


# fibre models and the universal models of the three families


def _basis_index(lie: DgLieAlgebra, derivation: Derivation) -> int:
    for i, theta in enumerate(lie.derivations):
        if theta == derivation:
            return i
    raise ModelShapeError("derivation is not a basis element", str(derivation))


def even_sphere_fibre(n: int) -> Tuple[FreeGCAlgebra, Differential]:
    """``(Λ(x, y), dy = x²)`` with ``|x| = 2n``."""
    algebra = FreeGCAlgebra([Generator("x", 2 * n), Generator("y", 4 * n - 1)])
    return algebra, Differential(algebra, {"y": algebra.gen("x") ** 2})


def projective_fibre(n: int) -> Tuple[FreeGCAlgebra, Differential]:
    """``(Λ(x, y), dy = x^{n+1})`` with ``|x| = 2``."""
    algebra = FreeGCAlgebra([Generator("x", 2), Generator("y", 2 * n + 1)])
    return algebra, Differential(algebra, {"y": algebra.gen("x") ** (n + 1)})


def odd_product_fibre(dims: Sequence[int]) -> Tuple[FreeGCAlgebra, Differential]:
    """The exterior algebra on ``x_1, ..., x_m`` with zero differential."""
    algebra = FreeGCAlgebra([Generator(f"x_{i + 1}", d) for i, d in enumerate(dims)])
    return algebra, Differential.zero(algebra)


def even_sphere_relative_model(n: int) -> RelativeSullivanModel:
    """Universal model for ``S^{2n}``: the line spanned by ``∂/∂y`` acting, base ``Λ z_{4n}``."""
    algebra, d = even_sphere_fibre(n)
    lie = positive_derivations(algebra, d)
    top = _basis_index(lie, Derivation(algebra, -(4 * n - 1), {"y": algebra.one()}))
    sub = sub_dgla(lie, [top])
    return ce_total(LieAction.from_lie(sub), [f"z_{4 * n}"])


def projective_relative_model(n: int) -> RelativeSullivanModel:
    """Universal model for ``CP^n`` built from the cycles ``x^{n+1−i}·∂/∂y``, ``2 <= i <= n+1``."""
    algebra, d = projective_fibre(n)
    lie = positive_derivations(algebra, d)
    x = algebra.gen("x")
    indices = [
        _basis_index(lie, Derivation(algebra, -(2 * i - 1), {"y": x ** (n + 1 - i)}))
        for i in range(2, n + 2)
    ]
    sub = sub_dgla(lie, indices)
    return ce_total(LieAction.from_lie(sub), [f"x_{i}" for i in range(2, n + 2)])


def odd_product_names(lie: DgLieAlgebra) -> List[str]:
    """``y^f_S`` for the basis element ``x_S·∂/∂x_f`` (``y^f`` when ``S`` is empty)."""
    names = []
    for theta in lie.derivations:
        [(f, image)] = [(i, a) for i, a in enumerate(theta.images) if a]
        [mono] = list(image.terms)
        subset = [str(i + 1) for i, e in enumerate(mono) if e]
        name = f"y^{f + 1}"
        if subset:
            name += "_" + ",".join(subset)
        names.append(name)
    return names


def odd_product_relative_model(dims: Sequence[int]) -> RelativeSullivanModel:
    """Universal model for a product of odd spheres, from the full positive derivations."""
    algebra, d = odd_product_fibre(dims)
    lie = positive_derivations(algebra, d)
    return ce_total(LieAction.from_lie(lie), odd_product_names(lie))


# formality quotient


class FormalityQuotient:
    """
    The complete intersection ``E`` of a pure relative model together with the map
    ``C`` killing the odd fibre generators.

    Args:
        model (RelativeSullivanModel): The relative model.
        intersection (CompleteIntersection): The quotient.
        pairing (Dict[str, str]): Odd fibre generator to the even one it kills.
    """

    def __init__(
        self,
        model: RelativeSullivanModel,
        intersection: CompleteIntersection,
        pairing: Dict[str, str],
    ) -> None:
        self.model = model
        self.intersection = intersection
        self.pairing = pairing

    def apply(self, element: AlgElement) -> AlgElement:
        """``C``: odd fibre generators to zero, everything else to itself."""
        return self.intersection.normal_form(element.project(self.intersection.ring))

    def chain_map_failures(self) -> List[str]:
        """Generators ``g`` with ``C(D g) != 0``."""
        return [
            g.name
            for g in self.model.total.generators
            if self.apply(self.model.differential.image(g.name))
        ]

    def cohomology_table(self, up_to: int) -> List[Dict[str, int]]:
        """Per degree: ``dim H(total)``, ``dim E`` and the rank of ``C`` on cocycles."""
        total = self.model.total
        dims = self.model.cohomology_dims(up_to)
        ci = self.intersection
        rows = []
        for k in range(up_to + 1):
            source = total.graded_basis(k)
            target = total.graded_basis(k + 1)
            if source and target:
                kernel = nullspace(matrix_of(self.model.differential, total, source, target), len(source))
            else:
                kernel = [[QQ.one if r == c else QQ.zero for r in range(len(source))] for c in range(len(source))]
            quotient = ci.graded_basis(k)
            position = {m: c for c, m in enumerate(quotient)}
            images = []
            for vector in kernel:
                cocycle = total.element({m: v for m, v in zip(source, vector) if v})
                row = [QQ.zero] * len(quotient)
                for m, v in self.apply(cocycle).terms.items():
                    row[position[m]] = v
                images.append(row)
            rows.append(
                {
                    "degree": k,
                    "total": dims[k],
                    "quotient": len(quotient),
                    "rank": rank(images, len(quotient)),
                }
            )
        return rows

    def is_quasi_isomorphism(self, up_to: Optional[int] = None) -> bool:
        """Chain map and iso on cohomology up to `up_to` (default: 4 × fibre dimension)."""
        if self.chain_map_failures():
            return False
        if up_to is None:
            up_to = getattr(settings, "EULERRING_DEGREE_FACTOR", 4) * self.intersection.fibre_dimension
        return all(r["total"] == r["quotient"] == r["rank"] for r in self.cohomology_table(up_to))


def formality_quotient(model: RelativeSullivanModel, orientation: str = "top") -> FormalityQuotient:
    """
    The complete intersection of a pure relative model.

    The fibre must consist of even generators ``x_j`` with ``D x_j = 0`` and odd
    generators ``y_j`` with ``D y_j = x_j^{m_j} − r_j``; the base differential must vanish.

    Raises:
        ModelShapeError: If the model does not have this shape.
    """
    if not model.base_differential.is_zero():
        raise ModelShapeError("formality quotient needs a base with zero differential")
    evens = [g for g in model.fibre.generators if not g.is_odd]
    odds = [g for g in model.fibre.generators if g.is_odd]
    if len(evens) != len(odds):
        raise ModelShapeError("fibre is not pure: even and odd generators do not pair up")
    for g in evens:
        if model.differential.image(g.name):
            raise ModelShapeError("even fibre generators must be cycles", g.name)
    total = model.total
    pairing: Dict[str, str] = {}
    relations: Dict[str, AlgElement] = {}
    for g in odds:
        image = model.differential.image(g.name)
        candidates = [
            x.name
            for x in evens
            for mono, coeff in image.terms.items()
            if coeff == 1
            and mono[total.index(x.name)] > 0
            and sum(mono) == mono[total.index(x.name)]
        ]
        if len(candidates) != 1 or candidates[0] in relations:
            raise ModelShapeError("cannot identify the pure power in D of an odd generator", g.name)
        pairing[g.name] = candidates[0]
        relations[candidates[0]] = image
    intersection = CompleteIntersection(
        model.base,
        evens,
        [relations[x.name] for x in evens],
        orientation=orientation,
    ).verify()
    return FormalityQuotient(model, intersection, pairing)


def formality_quotient_cpn(n: int) -> FormalityQuotient:
    """``E_n = B_n[x]/(x^{n+1} − Σ x_i x^{n+1−i})`` with the map ``C(y) = 0``, ``C(x) = x``."""
    return formality_quotient(projective_relative_model(n))
