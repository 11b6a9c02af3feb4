"""The fibration families the Euler ring is computed for.

Each space bundles its universal relative model with a fibre integration and a
fibrewise Euler class living in one ring where powers can be taken.
"""

import logging
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence

from .cemodel import (
    FormalityQuotient,
    RelativeSullivanModel,
    even_sphere_relative_model,
    formality_quotient,
    odd_product_relative_model,
    projective_relative_model,
)
from .cintersect import CompleteIntersection
from .exceptions import DegreeError, EulerRingFieldTypeError
from .fibint import FiniteFibreIntegration, UmkehrResult, build_pi, umkehr_euler
from .gcalg import AlgElement, FreeGCAlgebra

logger = logging.getLogger(__name__)


class FibrationSpace:
    """
    Common interface of the supported fibres ``X``.

    Subclasses provide :attr:`relative_model`, :attr:`ring`, :attr:`euler_class` and
    :meth:`integrate`.
    """

    family: str = ""

    @property
    def label(self) -> str:
        raise NotImplementedError

    @property
    def fibre_dimension(self) -> int:
        raise NotImplementedError

    @property
    def base(self) -> FreeGCAlgebra:
        return self.relative_model.base

    @cached_property
    def relative_model(self) -> RelativeSullivanModel:
        raise NotImplementedError

    @property
    def ring(self) -> FreeGCAlgebra:
        raise NotImplementedError

    @property
    def euler_class(self) -> AlgElement:
        raise NotImplementedError

    @property
    def intersection(self) -> Optional[CompleteIntersection]:
        """The complete intersection computing the total cohomology, when there is one."""
        return None

    def multiply(self, a: AlgElement, b: AlgElement) -> AlgElement:
        raise NotImplementedError

    def power(self, element: AlgElement, exponent: int) -> AlgElement:
        """Iterated multiplication, reducing after every step."""
        result = self.ring.one()
        for _ in range(exponent):
            result = self.multiply(result, element)
        return result

    def integrate(self, element: AlgElement) -> AlgElement:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return str(self)


class _IntersectionSpace(FibrationSpace):
    """A space whose relative model has a complete intersection as formality quotient."""

    @cached_property
    def quotient(self) -> FormalityQuotient:
        return formality_quotient(self.relative_model)

    @property
    def intersection(self) -> CompleteIntersection:
        return self.quotient.intersection

    @property
    def fibre_dimension(self) -> int:
        return self.intersection.fibre_dimension

    @property
    def ring(self) -> FreeGCAlgebra:
        return self.intersection.ring

    @cached_property
    def euler_class(self) -> AlgElement:
        return self.intersection.euler_class()

    def multiply(self, a: AlgElement, b: AlgElement) -> AlgElement:
        return self.intersection.multiply(a, b)

    def integrate(self, element: AlgElement) -> AlgElement:
        return self.intersection.fibre_integrate(element)


class EvenSphere(_IntersectionSpace):
    """``S^{2n}``, total cohomology ``Q[z_{4n}][x]/(x² − z_{4n})``."""

    family = "even-sphere"

    def __init__(self, n: int) -> None:
        EulerRingFieldTypeError.if_not_validated("EvenSphere", "n", n, int)
        if n < 1:
            raise DegreeError("even sphere needs n >= 1", n)
        self.n = n

    @property
    def label(self) -> str:
        return f"S^{2 * self.n}"

    @cached_property
    def relative_model(self) -> RelativeSullivanModel:
        return even_sphere_relative_model(self.n)


class ProjectiveSpace(_IntersectionSpace):
    """``CP^n``, total cohomology ``Q[x_2..x_{n+1}][x]/(x^{n+1} − Σ x_i x^{n+1−i})``."""

    family = "cpn"

    def __init__(self, n: int) -> None:
        EulerRingFieldTypeError.if_not_validated("ProjectiveSpace", "n", n, int)
        if n < 1:
            raise DegreeError("projective space needs n >= 1", n)
        self.n = n

    @property
    def label(self) -> str:
        return f"CP^{self.n}"

    @cached_property
    def relative_model(self) -> RelativeSullivanModel:
        return projective_relative_model(self.n)

    def top_generator(self) -> str:
        return f"x_{self.n + 1}"


class OddSphereProduct(FibrationSpace):
    """
    A product of odd spheres, given by the sphere dimensions.

    The fibre algebra is finite-dimensional, so fibre integration and the Euler class
    are computed on chain level in the total algebra.
    """

    family = "odd-product"

    def __init__(self, dims: Sequence[int]) -> None:
        dims = sorted(dims)
        if not dims or any(not isinstance(d, int) or d < 3 or d % 2 == 0 for d in dims):
            raise DegreeError("odd sphere dimensions must be odd and >= 3", dims)
        self.dims: List[int] = dims

    @property
    def label(self) -> str:
        return "x".join(f"S^{d}" for d in self.dims)

    @property
    def fibre_dimension(self) -> int:
        return sum(self.dims)

    @cached_property
    def relative_model(self) -> RelativeSullivanModel:
        return odd_product_relative_model(self.dims)

    @cached_property
    def pi(self) -> FiniteFibreIntegration:
        return build_pi(self.relative_model)

    @cached_property
    def umkehr(self) -> UmkehrResult:
        return umkehr_euler(self.pi)

    @property
    def ring(self) -> FreeGCAlgebra:
        return self.relative_model.total

    @property
    def euler_class(self) -> AlgElement:
        return self.umkehr.euler

    def multiply(self, a: AlgElement, b: AlgElement) -> AlgElement:
        return a * b

    def integrate(self, element: AlgElement) -> AlgElement:
        return self.pi(element)


def space_info(space: FibrationSpace) -> Dict[str, Any]:
    """
    JSON summary of a space: its Euler class, ``Der⁺`` of the fibre model, the acting
    sub-algebra, the complete intersection and, for odd sphere products, the Umkehr class.
    """
    model = space.relative_model
    info: Dict[str, Any] = {
        "space": space.label,
        "family": space.family,
        "d": space.fibre_dimension,
        "euler_class": str(space.euler_class),
        "der_plus": None,
        "acting": None,
        "intersection": None,
        "umkehr": None,
    }
    if model.lie is not None:
        info["acting"] = model.lie.to_json()
        parent = model.lie.parent if model.lie.parent is not None else model.lie
        info["der_plus"] = parent.to_json()
    if space.intersection is not None:
        info["intersection"] = space.intersection.to_json()
    if isinstance(space, OddSphereProduct):
        info["umkehr"] = space.umkehr.to_json()
    return info
