"""Finite-dimensional dg Lie algebras and the positive derivations of a minimal model."""

import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ

from .exceptions import (
    ClosureError,
    DegreeError,
    DifferentialError,
    EulerRingException,
    EulerRingFieldTypeError,
    ModelShapeError,
)
from .gcalg import Derivation, Differential, FreeGCAlgebra
from .linalg import nullspace, qq, qq_str, rank, solve

logger = logging.getLogger(__name__)

Vector = Dict[int, Any]


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _axpy(target: Vector, source: Vector, factor: Any) -> None:
    for k, v in source.items():
        value = target.get(k, QQ.zero) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class DgLieAlgebra:
    """
    A dg Lie algebra on a finite graded basis, concentrated in degrees >= 1.

    Args:
        basis (Sequence[Tuple[str, int]]): ``(name, degree)`` for every basis element.
        brackets (Optional[Dict[Tuple[int, int], Vector]]): ``[l_i, l_j]`` as sparse
            coordinate vectors, for ordered pairs. Missing pairs are zero.
        differential (Optional[Dict[int, Vector]]): ``∂ l_i`` as sparse vectors.
        derivations (Optional[Sequence[Derivation]]): When the algebra acts on a model,
            the derivation realizing each basis element.
        model (Optional[Tuple[FreeGCAlgebra, Differential]]): The model acted on.
        parent (Optional[DgLieAlgebra]): Ambient algebra of a sub dg Lie algebra.
        inclusion (Optional[Sequence[int]]): Parent index of every basis element.
    """

    def __init__(
        self,
        basis: Sequence[Tuple[str, int]],
        brackets: Optional[Dict[Tuple[int, int], Vector]] = None,
        differential: Optional[Dict[int, Vector]] = None,
        derivations: Optional[Sequence[Derivation]] = None,
        model: Optional[Tuple[FreeGCAlgebra, Differential]] = None,
        parent: Optional["DgLieAlgebra"] = None,
        inclusion: Optional[Sequence[int]] = None,
    ) -> None:
        self.basis: List[Tuple[str, int]] = []
        for name, degree in basis:
            EulerRingFieldTypeError.if_not_validated("DgLieAlgebra", "degree", degree, int)
            if degree < 1:
                raise DegreeError(f"basis element `{name}` must have degree >= 1", degree)
            self.basis.append((name, degree))
        self.brackets: Dict[Tuple[int, int], Vector] = {
            key: {k: qq(v) for k, v in value.items() if v}
            for key, value in (brackets or {}).items()
        }
        self.brackets = {key: value for key, value in self.brackets.items() if value}
        self._differential: Dict[int, Vector] = {
            i: {k: qq(v) for k, v in value.items() if v}
            for i, value in (differential or {}).items()
        }
        self._differential = {i: v for i, v in self._differential.items() if v}
        self.derivations = list(derivations) if derivations is not None else None
        self.model = model
        self.parent = parent
        self.inclusion = list(inclusion) if inclusion is not None else None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self.basis]

    @property
    def degrees(self) -> List[int]:
        return [degree for _, degree in self.basis]

    def degree_of(self, i: int) -> int:
        return self.basis[i][1]

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.basis):
            if n == name:
                return i
        raise EulerRingException(f"no basis element named `{name}`")

    def indices_of_degree(self, k: int) -> List[int]:
        return [i for i, (_, degree) in enumerate(self.basis) if degree == k]

    def bracket_basis(self, i: int, j: int) -> Vector:
        return dict(self.brackets.get((i, j), {}))

    def differential_basis(self, i: int) -> Vector:
        return dict(self._differential.get(i, {}))

    def bracket(self, x: Vector, y: Vector) -> Vector:
        """Bilinear extension of the bracket to sparse vectors."""
        result: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                _axpy(result, self.brackets.get((i, j), {}), a * b)
        return result

    def boundary(self, x: Vector) -> Vector:
        """Apply the internal differential ``∂`` to a sparse vector."""
        result: Vector = {}
        for i, a in x.items():
            _axpy(result, self._differential.get(i, {}), a)
        return result

    def vector_degree(self, x: Vector) -> Optional[int]:
        degrees = {self.degree_of(i) for i in x}
        if len(degrees) > 1:
            raise DegreeError("vector is not homogeneous", sorted(degrees))
        return degrees.pop() if degrees else None

    def is_abelian(self) -> bool:
        return not self.brackets

    def has_trivial_differential(self) -> bool:
        return not self._differential

    # identities

    def antisymmetry_failures(self) -> List[Tuple[str, str]]:
        failures = []
        for i in range(self.dimension):
            for j in range(i, self.dimension):
                sign = -_sign(self.degree_of(i) * self.degree_of(j))
                swapped = {k: sign * v for k, v in self.bracket_basis(j, i).items()}
                if self.bracket_basis(i, j) != swapped:
                    failures.append((self.basis[i][0], self.basis[j][0]))
        return failures

    def jacobi_failures(self) -> List[Tuple[str, str, str]]:
        """Triples violating ``[x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]``."""
        failures = []
        n = self.dimension
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    x, y, z = {i: QQ.one}, {j: QQ.one}, {k: QQ.one}
                    left = self.bracket(x, self.bracket(y, z))
                    right = self.bracket(self.bracket(x, y), z)
                    _axpy(
                        right,
                        self.bracket(y, self.bracket(x, z)),
                        QQ(_sign(self.degree_of(i) * self.degree_of(j))),
                    )
                    if left != right:
                        failures.append(tuple(self.basis[t][0] for t in (i, j, k)))
        return failures

    def differential_failures(self) -> List[Tuple[str, ...]]:
        """Basis elements with ``∂∂ != 0`` and pairs where ``∂`` is not a bracket derivation."""
        failures: List[Tuple[str, ...]] = []
        for i in range(self.dimension):
            if self.boundary(self.boundary({i: QQ.one})):
                failures.append((self.basis[i][0],))
        for i in range(self.dimension):
            for j in range(self.dimension):
                x, y = {i: QQ.one}, {j: QQ.one}
                left = self.boundary(self.bracket(x, y))
                right = self.bracket(self.boundary(x), y)
                _axpy(right, self.bracket(x, self.boundary(y)), QQ(_sign(self.degree_of(i))))
                if left != right:
                    failures.append((self.basis[i][0], self.basis[j][0]))
        return failures

    def verify(self) -> "DgLieAlgebra":
        """
        Check antisymmetry, Jacobi and the compatibility of ``∂``.

        Raises:
            EulerRingException: With the first failing basis tuple as witness.
            DifferentialError: If ``∂`` is not a square-zero bracket derivation.
        """
        failures = self.antisymmetry_failures()
        if failures:
            raise EulerRingException("bracket is not graded antisymmetric", failures[0])
        failures = self.jacobi_failures()
        if failures:
            raise EulerRingException("graded Jacobi identity fails", failures[0])
        failures = self.differential_failures()
        if failures:
            raise DifferentialError("∂ is not a square-zero derivation of the bracket", failures[0])
        return self

    # homology

    def differential_matrix(self, k: int) -> List[List[Any]]:
        """Matrix of ``∂`` from degree `k` to degree ``k - 1``."""
        source = self.indices_of_degree(k)
        target = self.indices_of_degree(k - 1)
        position = {t: r for r, t in enumerate(target)}
        rows = [[QQ.zero] * len(source) for _ in target]
        for c, i in enumerate(source):
            for t, v in self._differential.get(i, {}).items():
                rows[position[t]][c] = v
        return rows

    def cycles(self, k: int) -> List[Vector]:
        source = self.indices_of_degree(k)
        target = self.indices_of_degree(k - 1)
        if not target:
            return [{i: QQ.one} for i in source]
        kernel = nullspace(self.differential_matrix(k), len(source))
        return [{source[c]: v for c, v in enumerate(vec) if v} for vec in kernel]

    def boundaries(self, k: int) -> List[Vector]:
        return [self.boundary({i: QQ.one}) for i in self.indices_of_degree(k + 1)]

    def homology_dimension(self, k: int) -> int:
        target = self.indices_of_degree(k)
        boundaries = self.boundaries(k)
        rows = [[b.get(t, QQ.zero) for t in target] for b in boundaries]
        return len(self.cycles(k)) - rank(rows, len(target))

    def homology_dims(self) -> Dict[int, int]:
        return {k: self.homology_dimension(k) for k in sorted(set(self.degrees))}

    # derivations

    def derivation_of(self, x: Vector) -> Derivation:
        """The derivation realizing the vector `x`."""
        if self.derivations is None:
            raise ModelShapeError("this dg Lie algebra carries no derivations")
        algebra = self.model[0]
        degree = self.vector_degree(x)
        result = Derivation(algebra, -(degree or 1))
        for i, a in x.items():
            result = result + self.derivations[i].scale(a)
        return result

    def bracket_consistency_failures(self) -> List[Tuple[str, str]]:
        """Pairs whose composed bracket differs from the structure constants."""
        failures = []
        for i in range(self.dimension):
            for j in range(self.dimension):
                composed = self.derivations[i].bracket(self.derivations[j])
                stored = self.derivation_of(self.bracket_basis(i, j))
                if composed != stored:
                    failures.append((self.basis[i][0], self.basis[j][0]))
        return failures

    def to_json(self) -> Dict[str, Any]:
        def render(vector: Vector) -> Dict[str, str]:
            return {self.basis[k][0]: qq_str(v) for k, v in sorted(vector.items())}

        return {
            "basis": [{"name": name, "degree": degree} for name, degree in self.basis],
            "brackets": [
                {"left": self.basis[i][0], "right": self.basis[j][0], "value": render(v)}
                for (i, j), v in sorted(self.brackets.items())
                if i <= j
            ],
            "differential": [
                {"source": self.basis[i][0], "value": render(v)}
                for i, v in sorted(self._differential.items())
            ],
        }

    def __str__(self) -> str:
        return str({"basis": self.basis, "abelian": self.is_abelian()})

    def __repr__(self) -> str:
        return str(self)


class _Decomposer:
    """Coordinates of derivations in a graded basis of derivations."""

    def __init__(self, basis: List[Derivation], degrees: List[int]) -> None:
        self.by_degree: Dict[int, List[int]] = {}
        for i, k in enumerate(degrees):
            self.by_degree.setdefault(k, []).append(i)
        self.basis = basis
        self._keys: Dict[int, List[Tuple[int, Any]]] = {}
        self._columns: Dict[int, List[List[Any]]] = {}
        for k, indices in self.by_degree.items():
            keys = sorted({key for i in indices for key in basis[i].coordinates()})
            position = {key: r for r, key in enumerate(keys)}
            rows = [[QQ.zero] * len(indices) for _ in keys]
            for c, i in enumerate(indices):
                for key, v in basis[i].coordinates().items():
                    rows[position[key]][c] = v
            self._keys[k] = keys
            self._columns[k] = rows

    def __call__(self, derivation: Derivation) -> Vector:
        if derivation.is_zero():
            return {}
        k = -derivation.shift
        if k not in self.by_degree:
            raise ModelShapeError("derivation has no basis in its degree", str(derivation))
        coordinates = derivation.coordinates()
        keys = self._keys[k]
        known = set(keys)
        if any(key not in known for key in coordinates):
            raise ModelShapeError("derivation is not in the span of the basis", str(derivation))
        target = [coordinates.get(key, QQ.zero) for key in keys]
        indices = self.by_degree[k]
        solution = solve(self._columns[k], len(indices), target)
        if solution is None:
            raise ModelShapeError("derivation is not in the span of the basis", str(derivation))
        return {indices[c]: v for c, v in enumerate(solution) if v}


def positive_derivations(algebra: FreeGCAlgebra, differential: Differential) -> DgLieAlgebra:
    """
    The dg Lie algebra of derivations lowering degree, with bracket by composition
    and differential ``[d, -]``.

    The basis consists of the derivations ``m·∂/∂g`` with ``deg m < deg g``, ordered by
    Lie degree ``deg g − deg m``, then generator, then monomial. Degree 1 is cut down
    to the cycles of ``[d, -]`` so that the result is a dg Lie algebra in degrees >= 1.

    Args:
        algebra (FreeGCAlgebra): A simply connected model (all degrees >= 2).
        differential (Differential): Its differential.

    Raises:
        DegreeError: If a generator has degree 1.
        DifferentialError: If ``d∘d != 0``.

    Returns:
        DgLieAlgebra: The algebra, with `derivations` and `model` set.
    """
    d = Differential.from_derivation(differential).check()
    if any(g.degree < 2 for g in algebra.generators):
        raise DegreeError("positive derivations need a simply connected model", str(algebra))
    if d.has_linear_part():
        logger.warning("differential of %s has a linear part; the model is not minimal", algebra)

    raw: Dict[int, List[Derivation]] = {}
    for g in algebra.generators:
        for k in range(1, g.degree + 1):
            for mono in algebra.graded_basis(g.degree - k):
                raw.setdefault(k, []).append(
                    Derivation(algebra, -k, {g.name: algebra.monomial(mono)})
                )

    if raw.get(1):
        images = [d.bracket(theta) for theta in raw[1]]
        keys = sorted({key for image in images for key in image.coordinates()})
        if keys:
            position = {key: r for r, key in enumerate(keys)}
            rows = [[QQ.zero] * len(images) for _ in keys]
            for c, image in enumerate(images):
                for key, v in image.coordinates().items():
                    rows[position[key]][c] = v
            kernel = nullspace(rows, len(images))
            if len(kernel) < len(raw[1]):
                logger.debug(
                    "keeping %d of %d degree one derivations", len(kernel), len(raw[1])
                )
                cycles = []
                for vector in kernel:
                    combination = Derivation(algebra, -1)
                    for c, v in enumerate(vector):
                        if v:
                            combination = combination + raw[1][c].scale(v)
                    cycles.append(combination)
                raw[1] = cycles

    basis: List[Derivation] = []
    degrees: List[int] = []
    for k in sorted(raw):
        for theta in raw[k]:
            basis.append(theta)
            degrees.append(k)
    decompose = _Decomposer(basis, degrees)

    differential_constants: Dict[int, Vector] = {}
    for i, theta in enumerate(basis):
        if degrees[i] >= 2:
            differential_constants[i] = decompose(d.bracket(theta))
    bracket_constants: Dict[Tuple[int, int], Vector] = {}
    for i, theta in enumerate(basis):
        for j, eta in enumerate(basis):
            value = theta.bracket(eta)
            if value:
                bracket_constants[(i, j)] = decompose(value)

    lie = DgLieAlgebra(
        [(str(theta), k) for theta, k in zip(basis, degrees)],
        bracket_constants,
        differential_constants,
        derivations=basis,
        model=(algebra, d),
    )
    logger.debug("positive derivations of %s: %d basis elements", algebra, lie.dimension)
    return lie


def sub_dgla(lie: DgLieAlgebra, indices: Iterable[Union[int, str]]) -> DgLieAlgebra:
    """
    The sub dg Lie algebra spanned by the selected basis elements.

    Args:
        lie (DgLieAlgebra): The ambient algebra.
        indices (Iterable[Union[int, str]]): Basis indices or names.

    Raises:
        ClosureError: If the span is not closed; the witness is the offending pair
            (or single element for ``∂``).

    Returns:
        DgLieAlgebra: The sub algebra, with `parent` and `inclusion` set.
    """
    selected = [lie.index(i) if isinstance(i, str) else i for i in indices]
    if len(set(selected)) != len(selected) or any(
        not 0 <= i < lie.dimension for i in selected
    ):
        raise EulerRingException("invalid basis selection", selected)
    position = {p: s for s, p in enumerate(selected)}

    def restrict(vector: Vector, witness: Tuple[str, ...]) -> Vector:
        if any(k not in position for k in vector):
            raise ClosureError("selected span is not closed", witness)
        return {position[k]: v for k, v in vector.items()}

    differential = {
        s: restrict(lie.differential_basis(p), (lie.basis[p][0],))
        for s, p in enumerate(selected)
    }
    brackets = {
        (s, t): restrict(lie.bracket_basis(p, q), (lie.basis[p][0], lie.basis[q][0]))
        for s, p in enumerate(selected)
        for t, q in enumerate(selected)
    }
    derivations = (
        [lie.derivations[p] for p in selected] if lie.derivations is not None else None
    )
    return DgLieAlgebra(
        [lie.basis[p] for p in selected],
        brackets,
        differential,
        derivations=derivations,
        model=lie.model,
        parent=lie,
        inclusion=selected,
    )


class QuasiIsoReport:
    """Per-degree comparison of homology along an inclusion of dg Lie algebras."""

    def __init__(self, rows: List[Dict[str, int]]) -> None:
        self.rows = rows

    @property
    def is_quasi_isomorphism(self) -> bool:
        return all(
            row["rank"] == row["sub"] == row["ambient"] for row in self.rows
        )

    def __bool__(self) -> bool:
        return self.is_quasi_isomorphism

    def to_json(self) -> Dict[str, Any]:
        return {"degrees": self.rows, "quasi_isomorphism": self.is_quasi_isomorphism}

    def __str__(self) -> str:
        return str(self.to_json())

    def __repr__(self) -> str:
        return str(self)


def quasi_iso_check(sub: DgLieAlgebra) -> QuasiIsoReport:
    """
    Compare homology of a sub dg Lie algebra with that of its parent.

    For every degree the report lists both homology dimensions and the rank of the
    map induced on homology by the inclusion.
    """
    if sub.parent is None:
        raise EulerRingException("not a sub dg Lie algebra")
    lie = sub.parent
    rows = []
    for k in sorted(set(sub.degrees) | set(lie.degrees)):
        target = lie.indices_of_degree(k)
        boundary_rows = [[b.get(t, QQ.zero) for t in target] for b in lie.boundaries(k)]
        boundary_rank = rank(boundary_rows, len(target))
        image_rows: List[List[Any]] = []
        column = {t: c for c, t in enumerate(target)}
        for z in sub.cycles(k):
            row = [QQ.zero] * len(target)
            for s, v in z.items():
                row[column[sub.inclusion[s]]] = v
            image_rows.append(row)
        induced = rank(image_rows + boundary_rows, len(target)) - boundary_rank
        rows.append(
            {
                "degree": k,
                "sub": sub.homology_dimension(k),
                "ambient": lie.homology_dimension(k),
                "rank": induced,
            }
        )
    report = QuasiIsoReport(rows)
    logger.debug("quasi-isomorphism check: %s", report)
    return report
