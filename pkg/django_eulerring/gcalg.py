"""Free graded-commutative algebras over the rationals.

Elements are sparse maps from exponent tuples to ``QQ`` coefficients. Odd generators
anticommute and square to zero; even generators are polynomial. Multiplication
applies the Koszul sign, derivations extend by the graded Leibniz rule.
"""

import logging
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol, sympify
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from .exceptions import (
    AlgebraMismatchError,
    DegreeError,
    DifferentialError,
    EulerRingException,
    EulerRingFieldTypeError,
)
from .linalg import qq, qq_str, rank

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Scalar = Union[int, str, Any]


class Generator:
    """A named generator of cohomological degree >= 1."""

    __slots__ = ("name", "degree")

    def __init__(self, name: str, degree: int) -> None:
        EulerRingFieldTypeError.if_not_validated("Generator", "name", name, str)
        EulerRingFieldTypeError.if_not_validated("Generator", "degree", degree, int)
        if degree < 1:
            raise DegreeError(f"generator `{name}` must have positive degree", degree)
        self.name = name
        self.degree = degree

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Generator)
            and self.name == other.name
            and self.degree == other.degree
        )

    def __hash__(self) -> int:
        return hash((self.name, self.degree))

    def __str__(self) -> str:
        return str({"name": self.name, "degree": self.degree})

    def __repr__(self) -> str:
        return str(self)


class FreeGCAlgebra:
    """
    The free graded-commutative algebra on an ordered list of generators.

    Args:
        generators (Sequence[Generator]): Generators in index order. Names must be unique.
    """

    def __init__(self, generators: Sequence[Generator]) -> None:
        self.generators: Tuple[Generator, ...] = tuple(generators)
        for g in self.generators:
            EulerRingFieldTypeError.if_not_validated(
                "FreeGCAlgebra", "generators", g, Generator
            )
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise EulerRingException("generator names must be unique", self.names)
        self._degrees = tuple(g.degree for g in self.generators)
        self._odd = tuple(i for i, g in enumerate(self.generators) if g.is_odd)
        self._basis_cache: Dict[int, List[Monomial]] = {}

    @classmethod
    def from_degrees(cls, spec: Sequence[Tuple[str, int]]) -> "FreeGCAlgebra":
        return cls([Generator(name, degree) for name, degree in spec])

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self._degrees

    @property
    def is_polynomial(self) -> bool:
        """True when every generator has even degree."""
        return not self._odd

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise EulerRingException(f"no generator named `{name}` in {self}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def generator(self, name: str) -> Generator:
        return self.generators[self.index(name)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeGCAlgebra) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __str__(self) -> str:
        return "Λ(" + ", ".join(f"{g.name}[{g.degree}]" for g in self.generators) + ")"

    def __repr__(self) -> str:
        return str(self)

    # monomials

    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def generator_monomial(self, i: int, exponent: int = 1) -> Monomial:
        mono = [0] * self.ngens
        mono[i] = exponent
        return tuple(mono)

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self._degrees))

    def multiply_monomials(
        self, m1: Monomial, m2: Monomial
    ) -> Tuple[int, Optional[Monomial]]:
        """
        Product of two monomials as ``(sign, monomial)``.

        Returns ``(0, None)`` when an odd generator occurs in both factors.
        """
        if self._odd:
            count = 0
            seen = 0
            for i in self._odd:
                if m1[i]:
                    if m2[i]:
                        return 0, None
                    count += seen
                if m2[i]:
                    seen += 1
            sign = -1 if count % 2 else 1
        else:
            sign = 1
        return sign, tuple(a + b for a, b in zip(m1, m2))

    def format_monomial(self, mono: Monomial) -> str:
        parts = []
        for g, e in zip(self.generators, mono):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    def graded_basis(self, n: int) -> List[Monomial]:
        """
        All monomials of total degree `n`, in descending lexicographic order of
        their exponent vectors.

        Args:
            n (int): The degree.

        Raises:
            DegreeError: If some generator has non-positive degree.

        Returns:
            List[Monomial]: The monomial basis of the degree `n` piece.
        """
        if any(d <= 0 for d in self._degrees):
            raise DegreeError("graded pieces are infinite when a degree is <= 0")
        if n < 0:
            return []
        if n not in self._basis_cache:
            self._basis_cache[n] = list(self._monomials_of_degree(0, n))
        return list(self._basis_cache[n])

    def _monomials_of_degree(self, start: int, remaining: int) -> Iterator[Monomial]:
        if start == self.ngens:
            if remaining == 0:
                yield ()
            return
        degree = self._degrees[start]
        top = remaining // degree
        if self.generators[start].is_odd:
            top = min(top, 1)
        for e in range(top, -1, -1):
            for rest in self._monomials_of_degree(start + 1, remaining - e * degree):
                yield (e,) + rest

    # elements

    def element(self, terms: Optional[Dict[Monomial, Scalar]] = None) -> "AlgElement":
        return AlgElement(self, terms)

    def zero(self) -> "AlgElement":
        return AlgElement._raw(self, {})

    def one(self) -> "AlgElement":
        return AlgElement._raw(self, {self.unit_monomial(): QQ.one})

    def scalar(self, value: Scalar) -> "AlgElement":
        return AlgElement(self, {self.unit_monomial(): value})

    def gen(self, name: str) -> "AlgElement":
        return AlgElement._raw(self, {self.generator_monomial(self.index(name)): QQ.one})

    def gens(self) -> List["AlgElement"]:
        return [self.gen(name) for name in self.names]

    def monomial(self, mono: Monomial, coeff: Scalar = 1) -> "AlgElement":
        return AlgElement(self, {tuple(mono): coeff})

    def symbols(self) -> List[Symbol]:
        return [Symbol(name) for name in self.names]


class AlgElement:
    """
    An element of a :class:`FreeGCAlgebra`.

    Args:
        algebra (FreeGCAlgebra): The parent algebra.
        terms (Optional[Dict[Monomial, Scalar]]): Monomial to coefficient map. Zero
            coefficients are dropped.
    """

    __slots__ = ("algebra", "terms")

    def __init__(
        self, algebra: FreeGCAlgebra, terms: Optional[Dict[Monomial, Scalar]] = None
    ) -> None:
        self.algebra = algebra
        self.terms: Dict[Monomial, Any] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != algebra.ngens:
                raise EulerRingException("monomial length does not match the algebra", mono)
            if any(mono[i] > 1 for i in algebra._odd):
                continue
            value = qq(coeff)
            if value:
                self.terms[mono] = self.terms.get(mono, QQ.zero) + value
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def _raw(cls, algebra: FreeGCAlgebra, terms: Dict[Monomial, Any]) -> "AlgElement":
        element = cls.__new__(cls)
        element.algebra = algebra
        element.terms = terms
        return element

    # arithmetic

    def _coerce(self, other: Any) -> "AlgElement":
        if isinstance(other, AlgElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraMismatchError(
                    f"operands live in {self.algebra} and {other.algebra}"
                )
            return other
        return self.algebra.scalar(other)

    def __add__(self, other: Any) -> "AlgElement":
        other = self._coerce(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            value = terms.get(mono, QQ.zero) + coeff
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
        return AlgElement._raw(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> "AlgElement":
        return AlgElement._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Any) -> "AlgElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "AlgElement":
        return self._coerce(other) - self

    def scale(self, value: Scalar) -> "AlgElement":
        value = qq(value)
        if not value:
            return self.algebra.zero()
        return AlgElement._raw(self.algebra, {m: c * value for m, c in self.terms.items()})

    def __mul__(self, other: Any) -> "AlgElement":
        if isinstance(other, AlgElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: Any) -> "AlgElement":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "AlgElement":
        result = self.algebra.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgElement):
            return self.algebra == other.algebra and self.terms == other.terms
        try:
            return self.terms == self.algebra.scalar(other).terms
        except (TypeError, ValueError, CoercionFailed):
            return NotImplemented

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({self.algebra.monomial_degree(m) for m in self.terms}) <= 1

    def homogeneous_degree(self) -> Optional[int]:
        """
        The common degree of all terms, None for the zero element.

        Raises:
            DegreeError: If the element mixes degrees.
        """
        degrees = {self.algebra.monomial_degree(m) for m in self.terms}
        if len(degrees) > 1:
            raise DegreeError(f"`{self}` is not homogeneous", sorted(degrees))
        return degrees.pop() if degrees else None

    @property
    def degree(self) -> Optional[int]:
        return self.homogeneous_degree()

    def homogeneous_part(self, n: int) -> "AlgElement":
        degree = self.algebra.monomial_degree
        return AlgElement._raw(
            self.algebra, {m: c for m, c in self.terms.items() if degree(m) == n}
        )

    def coefficient(self, mono: Monomial) -> Any:
        return self.terms.get(tuple(mono), QQ.zero)

    def constant_term(self) -> Any:
        return self.coefficient(self.algebra.unit_monomial())

    def linear_part(self) -> "AlgElement":
        """Terms that are a single generator to the first power."""
        return AlgElement._raw(
            self.algebra, {m: c for m, c in self.terms.items() if sum(m) == 1}
        )

    def sorted_terms(self) -> List[Tuple[Monomial, Any]]:
        """Terms by decreasing degree, then decreasing exponent vector."""
        degree = self.algebra.monomial_degree
        return sorted(self.terms.items(), key=lambda t: (degree(t[0]), t[0]), reverse=True)

    def max_exponent(self, name: str) -> int:
        i = self.algebra.index(name)
        return max((m[i] for m in self.terms), default=0)

    def coefficient_of_power(self, name: str, exponent: int) -> "AlgElement":
        """The coefficient of ``name^exponent`` when viewed as a polynomial in `name`."""
        i = self.algebra.index(name)
        terms = {}
        for mono, coeff in self.terms.items():
            if mono[i] == exponent:
                terms[mono[:i] + (0,) + mono[i + 1 :]] = coeff
        return AlgElement._raw(self.algebra, terms)

    # maps

    def relabel(self, target: FreeGCAlgebra) -> "AlgElement":
        """
        The same element in `target`, matching generators by name.

        Raises:
            AlgebraMismatchError: If a generator in use is missing from `target`.
        """
        return self.project(target, strict=True)

    def project(self, target: FreeGCAlgebra, strict: bool = False) -> "AlgElement":
        """
        Send generators missing from `target` to zero and relabel the rest.

        Args:
            target (FreeGCAlgebra): The target algebra.
            strict (bool): Raise instead of dropping terms with missing generators.

        Returns:
            AlgElement: The image in `target`.
        """
        source = self.algebra
        mapping = []
        for g in source.generators:
            if g.name in target:
                if target.generator(g.name).degree != g.degree:
                    raise AlgebraMismatchError(f"degree of `{g.name}` differs in {target}")
                mapping.append(target.index(g.name))
            else:
                mapping.append(None)
        terms: Dict[Monomial, Any] = {}
        for mono, coeff in self.terms.items():
            if any(e and mapping[i] is None for i, e in enumerate(mono)):
                if strict:
                    raise AlgebraMismatchError(
                        f"`{source.format_monomial(mono)}` has no image in {target}"
                    )
                continue
            new = [0] * target.ngens
            odd_positions = []
            for i, e in enumerate(mono):
                if e:
                    new[mapping[i]] = e
                    if source.generators[i].is_odd:
                        odd_positions.append(mapping[i])
            inversions = sum(
                1
                for a in range(len(odd_positions))
                for b in range(a + 1, len(odd_positions))
                if odd_positions[a] > odd_positions[b]
            )
            key = tuple(new)
            value = terms.get(key, QQ.zero) + (-coeff if inversions % 2 else coeff)
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return AlgElement._raw(target, terms)

    def evaluate(self, point: Dict[str, Scalar]) -> Any:
        """
        Evaluate at a rational point.

        Raises:
            DegreeError: If a term involves an odd generator.
        """
        total = QQ.zero
        values = [qq(point[g.name]) if g.name in point else None for g in self.algebra.generators]
        for mono, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(mono):
                if not e:
                    continue
                if self.algebra.generators[i].is_odd:
                    raise DegreeError("cannot evaluate odd generators", self.algebra.generators[i].name)
                if values[i] is None:
                    raise EulerRingException("missing value", self.algebra.generators[i].name)
                term = term * values[i] ** e
            total += term
        return total

    def to_sympy(self) -> Any:
        """The element as a sympy expression; only polynomial terms are allowed."""
        symbols = self.algebra.symbols()
        expression = 0
        for mono, coeff in self.sorted_terms():
            if any(mono[i] for i in self.algebra._odd):
                raise DegreeError("odd generators have no sympy image", self.algebra.format_monomial(mono))
            term = QQ.to_sympy(coeff)
            for s, e in zip(symbols, mono):
                if e:
                    term = term * s**e
            expression = expression + term
        return expression

    @classmethod
    def from_sympy(cls, algebra: FreeGCAlgebra, expression: Any) -> "AlgElement":
        """Read a polynomial sympy expression in the generator symbols of `algebra`."""
        symbols = algebra.symbols()
        if not symbols:
            return algebra.scalar(QQ.from_sympy(sympify(expression)))
        poly = Poly(expression, *symbols, domain="QQ")
        return cls(algebra, {tuple(m): QQ.convert(c) for m, c in poly.terms()})

    # serialization

    def to_json(self) -> Dict[str, Any]:
        return {
            "vars": self.algebra.names,
            "terms": [
                {"coeff": qq_str(coeff), "exps": list(mono)}
                for mono, coeff in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, algebra: FreeGCAlgebra, data: Dict[str, Any]) -> "AlgElement":
        if list(data["vars"]) != algebra.names:
            raise AlgebraMismatchError("`vars` do not match the algebra", data["vars"])
        return cls(algebra, {tuple(t["exps"]): t["coeff"] for t in data["terms"]})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for mono, coeff in self.sorted_terms():
            sign = "-" if coeff < 0 else "+"
            magnitude = -coeff if coeff < 0 else coeff
            word = self.algebra.format_monomial(mono)
            if word == "1":
                body = qq_str(magnitude)
            elif magnitude == 1:
                body = word
            else:
                body = f"{qq_str(magnitude)}*{word}"
            if not out:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return str(self)


def _check_same(a: AlgElement, b: AlgElement) -> None:
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise AlgebraMismatchError(f"operands live in {a.algebra} and {b.algebra}")


def multiply(a: AlgElement, b: AlgElement) -> AlgElement:
    """
    Koszul-signed product of two elements of the same algebra.

    Raises:
        AlgebraMismatchError: If the parents differ.
    """
    _check_same(a, b)
    algebra = a.algebra
    terms: Dict[Monomial, Any] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            sign, mono = algebra.multiply_monomials(m1, m2)
            if not sign:
                continue
            value = c1 * c2
            if sign < 0:
                value = -value
            total = terms.get(mono, QQ.zero) + value
            if total:
                terms[mono] = total
            else:
                terms.pop(mono, None)
    return AlgElement._raw(algebra, terms)


class Derivation:
    """
    A derivation of degree `shift`, determined by its values on generators.

    Args:
        algebra (FreeGCAlgebra): Source (and target) algebra.
        shift (int): Degree of the derivation.
        images (Optional[Dict[str, AlgElement]]): Generator name to image. Missing
            generators map to zero.

    Raises:
        DegreeError: If an image has the wrong degree.
    """

    __slots__ = ("algebra", "shift", "images")

    def __init__(
        self,
        algebra: FreeGCAlgebra,
        shift: int,
        images: Optional[Dict[str, AlgElement]] = None,
    ) -> None:
        EulerRingFieldTypeError.if_not_validated("Derivation", "shift", shift, int)
        images = images or {}
        for name in images:
            algebra.index(name)
        self.algebra = algebra
        self.shift = shift
        values = []
        for g in algebra.generators:
            image = images.get(g.name)
            if image is None:
                image = algebra.zero()
            _check_same(image, algebra.zero())
            degree = image.homogeneous_degree()
            if degree is not None and degree != g.degree + shift:
                raise DegreeError(
                    f"image of `{g.name}` has degree {degree}, expected {g.degree + shift}",
                    str(image),
                )
            values.append(image)
        self.images: Tuple[AlgElement, ...] = tuple(values)

    @property
    def degree(self) -> int:
        return self.shift

    def image(self, name: str) -> AlgElement:
        return self.images[self.algebra.index(name)]

    def image_map(self) -> Dict[str, AlgElement]:
        return {g.name: self.images[i] for i, g in enumerate(self.algebra.generators)}

    def __call__(self, element: AlgElement) -> AlgElement:
        return apply_derivation(self, element)

    def bracket(self, other: "Derivation") -> "Derivation":
        """Graded commutator ``self∘other − (−1)^{|self||other|} other∘self``."""
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("derivations of different algebras")
        sign = -1 if (self.shift * other.shift) % 2 else 1
        images = {}
        for g, a, b in zip(self.algebra.generators, self.images, other.images):
            images[g.name] = self(b) - other(a).scale(sign)
        return Derivation(self.algebra, self.shift + other.shift, images)

    def _combine(self, other: "Derivation", sign: int) -> "Derivation":
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("derivations of different algebras")
        if other.shift != self.shift and not (self.is_zero() or other.is_zero()):
            raise DegreeError("cannot add derivations of different degrees")
        shift = self.shift if not self.is_zero() else other.shift
        images = {
            g.name: a + b.scale(sign)
            for g, a, b in zip(self.algebra.generators, self.images, other.images)
        }
        return Derivation(self.algebra, shift, images)

    def __add__(self, other: "Derivation") -> "Derivation":
        return self._combine(other, 1)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self._combine(other, -1)

    def __neg__(self) -> "Derivation":
        return self.scale(-1)

    def scale(self, value: Scalar) -> "Derivation":
        return Derivation(
            self.algebra,
            self.shift,
            {g.name: a.scale(value) for g, a in zip(self.algebra.generators, self.images)},
        )

    def __mul__(self, value: Scalar) -> "Derivation":
        return self.scale(value)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(not a for a in self.images)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.algebra == other.algebra
        return (
            self.algebra == other.algebra
            and self.shift == other.shift
            and all(a == b for a, b in zip(self.images, other.images))
        )

    __hash__ = None

    def coordinates(self) -> Dict[Tuple[int, Monomial], Any]:
        """Coefficients on the monomial-times-partial basis, keyed by (generator, monomial)."""
        return {
            (i, mono): coeff
            for i, image in enumerate(self.images)
            for mono, coeff in image.terms.items()
        }

    def has_linear_part(self) -> bool:
        return any(image.linear_part() for image in self.images)

    def __str__(self) -> str:
        parts = []
        for g, image in zip(self.algebra.generators, self.images):
            if not image:
                continue
            text = str(image)
            if text == "1":
                parts.append(f"d/d{g.name}")
            elif len(image.terms) == 1 and not text.startswith("-"):
                parts.append(f"{text}*d/d{g.name}")
            else:
                parts.append(f"({text})*d/d{g.name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return str(self)


def apply_derivation(theta: Derivation, element: AlgElement) -> AlgElement:
    """
    Extend `theta` from generators to `element` by the graded Leibniz rule.

    Raises:
        AlgebraMismatchError: If `element` is not in the source algebra of `theta`.
    """
    algebra = theta.algebra
    _check_same(element, algebra.zero())
    result = algebra.zero()
    degrees = algebra.degrees
    for mono, coeff in element.terms.items():
        prefix_degree = 0
        for i, e in enumerate(mono):
            if not e:
                continue
            image = theta.images[i]
            if image:
                prefix = mono[:i] + (0,) * (algebra.ngens - i)
                suffix = (0,) * (i + 1) + mono[i + 1 :]
                middle = AlgElement._raw(algebra, {algebra.generator_monomial(i, e - 1): QQ(e)})
                term = AlgElement._raw(algebra, {prefix: coeff}) * (middle * image)
                term = term * AlgElement._raw(algebra, {suffix: QQ.one})
                if (theta.shift * prefix_degree) % 2:
                    term = -term
                result = result + term
            prefix_degree += e * degrees[i]
    return result


class Differential(Derivation):
    """A degree +1 derivation squaring to zero."""

    __slots__ = ()

    def __init__(
        self, algebra: FreeGCAlgebra, images: Optional[Dict[str, AlgElement]] = None
    ) -> None:
        super().__init__(algebra, 1, images)

    @classmethod
    def zero(cls, algebra: FreeGCAlgebra) -> "Differential":
        return cls(algebra, {})

    @classmethod
    def from_derivation(cls, derivation: Derivation) -> "Differential":
        if derivation.shift != 1 and not derivation.is_zero():
            raise DegreeError("a differential has degree +1", derivation.shift)
        return cls(derivation.algebra, derivation.image_map())

    def square_failure(self) -> Optional[str]:
        """Name of the first generator with d(d(g)) != 0, or None."""
        for g, image in zip(self.algebra.generators, self.images):
            if self(image):
                return g.name
        return None

    def check(self) -> "Differential":
        """
        Raises:
            DifferentialError: If d∘d is nonzero on some generator.
        """
        failure = self.square_failure()
        if failure is not None:
            raise DifferentialError("d∘d is not zero", failure)
        return self


def partial(algebra: FreeGCAlgebra, name: str) -> Derivation:
    """The derivation ``∂/∂name``."""
    g = algebra.generator(name)
    return Derivation(algebra, -g.degree, {name: algebra.one()})


def matrix_of(
    linear_map: Callable[[AlgElement], AlgElement],
    algebra: FreeGCAlgebra,
    source: Sequence[Monomial],
    target: Sequence[Monomial],
) -> List[List[Any]]:
    """Matrix (rows = `target` monomials) of `linear_map` on the `source` monomials."""
    position = {m: r for r, m in enumerate(target)}
    rows = [[QQ.zero] * len(source) for _ in target]
    for c, mono in enumerate(source):
        image = linear_map(AlgElement._raw(algebra, {mono: QQ.one}))
        for m, coeff in image.terms.items():
            if m not in position:
                raise DegreeError("image leaves the target graded piece", algebra.format_monomial(m))
            rows[position[m]][c] = coeff
    return rows


def differential_rank(algebra: FreeGCAlgebra, d: Derivation, k: int) -> int:
    """Rank of ``d`` restricted to the degree `k` piece."""
    source = algebra.graded_basis(k)
    target = algebra.graded_basis(k + d.shift)
    if not source or not target:
        return 0
    return rank(matrix_of(d, algebra, source, target), len(source))


def cohomology_dims(algebra: FreeGCAlgebra, d: Differential, up_to: int) -> List[int]:
    """
    Dimensions of ``H^k(algebra, d)`` for ``k = 0..up_to``.

    Raises:
        DifferentialError: If ``d∘d != 0``.
    """
    if d.algebra != algebra:
        raise AlgebraMismatchError("differential belongs to another algebra")
    Differential.from_derivation(d).check()
    ranks = [differential_rank(algebra, d, k) for k in range(up_to + 1)]
    dims = []
    for k in range(up_to + 1):
        previous = ranks[k - 1] if k else 0
        dims.append(len(algebra.graded_basis(k)) - ranks[k] - previous)
    logger.debug("cohomology of %s up to %d: %s", algebra, up_to, dims)
    return dims
