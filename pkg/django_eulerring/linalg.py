"""Exact linear algebra over the rationals.

Thin helpers around :class:`sympy.polys.matrices.DomainMatrix` over ``QQ``. Every
matrix is passed around as a list of rows whose entries are ``QQ`` elements.
"""

from typing import Any, List, Optional, Sequence, Tuple

from sympy import Rational, sympify
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

Row = List[Any]


def qq(value: Any) -> Any:
    """
    Convert `value` into an element of the exact rational field ``QQ``.

    Args:
        value (Any): An int, a ``"p/q"`` string, a sympy Rational or a ``QQ`` element.

    Returns:
        Any: The corresponding ``QQ`` element.
    """
    if isinstance(value, str):
        return QQ.from_sympy(Rational(sympify(value)))
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    return QQ.convert(value)


def qq_str(value: Any) -> str:
    """Render a rational as ``"p"`` or ``"p/q"``."""
    return str(QQ.to_sympy(qq(value)))


def _matrix(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    return DomainMatrix([list(row) for row in rows], (len(rows), ncols), QQ)


def rank(rows: Sequence[Row], ncols: int) -> int:
    """Rank of the matrix given by `rows` (each of length `ncols`)."""
    if not rows or not ncols:
        return 0
    return _matrix(rows, ncols).rank()


def rref(rows: Sequence[Row], ncols: int) -> Tuple[List[Row], Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if not rows or not ncols:
        return [], ()
    reduced, pivots = _matrix(rows, ncols).rref()
    return reduced.to_list(), tuple(pivots)


def nullspace(rows: Sequence[Row], ncols: int) -> List[Row]:
    """
    Basis of the right kernel of the matrix.

    The basis vector attached to a free column has a 1 in that column and a 0 in
    every other free column, so the coordinates of a kernel vector in this basis
    are its values at the free columns.

    Args:
        rows (Sequence[Row]): The matrix rows.
        ncols (int): Number of columns.

    Returns:
        List[Row]: Kernel basis vectors, ordered by free column.
    """
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vector = [QQ.zero] * ncols
        vector[f] = QQ.one
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r][f]
        basis.append(vector)
    return basis


def solve(rows: Sequence[Row], ncols: int, target: Sequence[Any]) -> Optional[Row]:
    """
    One solution `v` of ``A v = target``, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    if not ncols:
        return [] if all(not t for t in target) else None
    augmented = [list(row) + [qq(t)] for row, t in zip(rows, target)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    solution = [QQ.zero] * ncols
    for r, p in enumerate(pivots):
        solution[p] = reduced[r][ncols]
    return solution
