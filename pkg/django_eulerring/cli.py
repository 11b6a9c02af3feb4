"""Space descriptors and output rendering shared by the management commands."""

import json
import logging
from typing import Any, Dict, List, Optional, Sequence, Union

from django.conf import settings

from .eulerring import EulerRingReport, KappaTable
from .exceptions import InvalidSpaceSpec
from .spaces import EvenSphere, FibrationSpace, OddSphereProduct, ProjectiveSpace, space_info

logger = logging.getLogger(__name__)

FAMILIES = ("even-sphere", "cpn", "odd-product")
FORMATS = ("json", "table")

EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_SPEC = 2


class SpaceSpec:
    """
    A fibre family with its parameters, e.g. ``cpn:3`` or ``odd-product:3,5``.

    Args:
        family (str): One of ``even-sphere``, ``cpn``, ``odd-product``.
        n (Optional[int]): ``n`` of ``S^{2n}`` or ``CP^n``.
        dims (Optional[Sequence[int]]): Sphere dimensions of an odd product.

    Raises:
        InvalidSpaceSpec: If the family is unknown or the parameters are out of range.
    """

    def __init__(self, family: str, n: Optional[int] = None, dims: Optional[Sequence[int]] = None) -> None:
        if family not in FAMILIES:
            raise InvalidSpaceSpec(f"unknown family, expected one of {FAMILIES}", family)
        if family == "odd-product":
            if not dims:
                raise InvalidSpaceSpec("odd-product needs --dims")
            if any(d < 3 or d % 2 == 0 for d in dims):
                raise InvalidSpaceSpec("odd-product dimensions must be odd and >= 3", list(dims))
            dims = sorted(dims)
        else:
            if n is None or n < 1:
                raise InvalidSpaceSpec(f"{family} needs --n >= 1", n)
        self.family = family
        self.n = n if family != "odd-product" else None
        self.dims: Optional[List[int]] = list(dims) if family == "odd-product" else None

    @classmethod
    def parse(cls, family: str, n: Optional[Union[int, str]] = None, dims: Optional[Union[str, Sequence[int]]] = None) -> "SpaceSpec":
        """Build from command-line values; `dims` may be a comma-separated string."""
        try:
            if isinstance(dims, str):
                dims = [int(d) for d in dims.split(",") if d.strip()]
            if isinstance(n, str):
                n = int(n)
        except ValueError as e:
            raise InvalidSpaceSpec("parameters must be integers", str(e)) from e
        return cls(family, n, dims)

    @classmethod
    def from_key(cls, key: str) -> "SpaceSpec":
        """Parse ``family:n`` or ``odd-product:d1,d2,...``."""
        family, _, value = key.partition(":")
        if not value:
            raise InvalidSpaceSpec("expected family:parameters", key)
        if family == "odd-product":
            return cls.parse(family, dims=value)
        return cls.parse(family, n=value)

    @property
    def key(self) -> str:
        if self.family == "odd-product":
            return f"{self.family}:{','.join(map(str, self.dims))}"
        return f"{self.family}:{self.n}"

    def build(self) -> FibrationSpace:
        if self.family == "even-sphere":
            return EvenSphere(self.n)
        if self.family == "cpn":
            return ProjectiveSpace(self.n)
        return OddSphereProduct(self.dims)

    def __str__(self) -> str:
        return self.key

    def __repr__(self) -> str:
        return str(self)


def output_format(value: Optional[str]) -> str:
    """The requested format, or ``EULERRING_OUTPUT_FORMAT``."""
    value = value or getattr(settings, "EULERRING_OUTPUT_FORMAT", "table")
    if value not in FORMATS:
        raise InvalidSpaceSpec(f"format must be one of {FORMATS}", value)
    return value


def render_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def render_table(rows: List[Dict[str, Any]], columns: Sequence[str]) -> str:
    """Left-aligned plain-text table with a header line."""
    cells = [[str(c) for c in columns]] + [[str(row.get(c, "")) for c in columns] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def model_dump(space: FibrationSpace, max_degree: Optional[int] = None) -> Dict[str, Any]:
    """Generators, differentials and total cohomology of the universal model, with :func:`space_info`."""
    model = space.relative_model.verify()
    if max_degree is None:
        max_degree = getattr(settings, "EULERRING_DEGREE_FACTOR", 4) * space.fibre_dimension
    return {
        **space_info(space),
        "base": model.base_names,
        "fibre": model.fibre_names,
        "generators": model.generator_table(),
        "cohomology": model.cohomology_dims(max_degree),
        "max_degree": max_degree,
    }


def render_model(dump: Dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return render_json(dump)
    header = f"{dump['space']}  (fibre dimension {dump['d']})"
    table = render_table(dump["generators"], ["name", "degree", "role", "differential"])
    cohomology = " ".join(str(c) for c in dump["cohomology"])
    return f"{header}\n{table}\ncohomology dims 0..{dump['max_degree']}: {cohomology}"


def render_kappas(space: FibrationSpace, table: KappaTable, fmt: str, seed: int) -> str:
    if fmt == "json":
        return render_json({"space": space.label, "d": space.fibre_dimension, "kappas": table.to_json(), "seed": seed})
    rows = [{"i": i, "kappa_i": str(table[i])} for i in table.indices]
    return f"{space.label}  (seed {seed})\n" + render_table(rows, ["i", "kappa_i"])


def render_report(report: EulerRingReport, fmt: str) -> str:
    data = report.to_json()
    if fmt == "json":
        return render_json(data)
    lines = [f"{data['space']}  (d = {data['d']}, seed {data['seed']})"]
    lines.append(render_table([{"i": k["i"], "kappa_i": k["text"]} for k in data["kappas"]], ["i", "kappa_i"]))
    lines.append("relations:")
    lines.extend(f"  {r}" for r in data["relations"])
    if data["independence"]:
        lines.append(f"independence: {data['independence']['verdict']} ({data['independence']['certificate']})")
    lines.append(f"Euler ring: {data['presentation']}")
    if data["leading_terms"]:
        lines.append(f"leading terms: {'passed' if data['leading_terms']['passed'] else 'FAILED'}")
    return "\n".join(lines)


def add_space_arguments(parser: Any) -> None:
    """Positional family plus ``--n`` / ``--dims`` and ``--format``."""
    parser.add_argument("family", help=f"one of {', '.join(FAMILIES)}")
    parser.add_argument("--n", type=int, default=None, help="n of S^{2n} or CP^n")
    parser.add_argument("--dims", default=None, help="comma-separated odd sphere dimensions")
    parser.add_argument(
        "--format",
        dest="output_format",
        default=None,
        help="json or table (default: EULERRING_OUTPUT_FORMAT)",
    )
