default_app_config = "django_eulerring.apps.DjangoEulerringConfig"

from .exceptions import (
    AlgebraMismatchError,
    ClosureError,
    DegeneratePairingError,
    DegreeError,
    DifferentialError,
    EulerRingException,
    EulerRingFieldTypeError,
    InvalidSpaceSpec,
    ModelShapeError,
)
from .gcalg import AlgElement, Derivation, Differential, FreeGCAlgebra, Generator
from .derlie import DgLieAlgebra, positive_derivations, quasi_iso_check, sub_dgla
from .cintersect import CompleteIntersection
from .cemodel import (
    LieAction,
    RelativeSullivanModel,
    ce_base,
    ce_total,
    even_sphere_relative_model,
    formality_quotient,
    formality_quotient_cpn,
    odd_product_relative_model,
    projective_relative_model,
)
from .fibint import (
    UmkehrResult,
    build_pi,
    lh_euler_class,
    lh_fibre_integrate,
    umkehr_euler,
    uniqueness_dimension,
)
from .spaces import EvenSphere, OddSphereProduct, ProjectiveSpace
from .eulerring import (
    KappaTable,
    EulerRingReport,
    ch_relations,
    euler_ring_report,
    independence_certificate,
    kappa,
    kappa_table,
    leading_term_checks,
)

__all__ = [
    "AlgebraMismatchError",
    "ClosureError",
    "DegeneratePairingError",
    "DegreeError",
    "DifferentialError",
    "EulerRingException",
    "EulerRingFieldTypeError",
    "InvalidSpaceSpec",
    "ModelShapeError",
    "AlgElement",
    "Derivation",
    "Differential",
    "FreeGCAlgebra",
    "Generator",
    "DgLieAlgebra",
    "positive_derivations",
    "quasi_iso_check",
    "sub_dgla",
    "CompleteIntersection",
    "LieAction",
    "RelativeSullivanModel",
    "ce_base",
    "ce_total",
    "even_sphere_relative_model",
    "formality_quotient",
    "formality_quotient_cpn",
    "odd_product_relative_model",
    "projective_relative_model",
    "UmkehrResult",
    "build_pi",
    "lh_euler_class",
    "lh_fibre_integrate",
    "umkehr_euler",
    "uniqueness_dimension",
    "EvenSphere",
    "OddSphereProduct",
    "ProjectiveSpace",
    "KappaTable",
    "EulerRingReport",
    "ch_relations",
    "euler_ring_report",
    "independence_certificate",
    "kappa",
    "kappa_table",
    "leading_term_checks",
]
