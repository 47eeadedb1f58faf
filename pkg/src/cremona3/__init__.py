"""Cremona transformations of P^3 with prescribed bidegree, certified by an
independent intersection-theoretic oracle over a prime field."""

from .certificate import (
    load_certificate,
    serialize_certificate,
    verification_failures,
    verify_certificate,
)
from .errors import (
    BidegreeMismatch,
    CommonComponent,
    CremonaError,
    CriterionViolation,
    ForgeExhausted,
    GenericityExhausted,
    GenericityFailure,
    MalformedCertificate,
    OutOfRange,
)
from .field import DEFAULT_PRIME, PrimeField, is_prime
from .modmat import BACKEND
from .oracle import DeclaredBasePoint, IntersectionReport, residual_intersection
from .plane import (
    DeJonquieresWitness,
    PlaneCremonaMap,
    PointConfiguration,
    build_de_jonquieres,
    curves_through,
    forge_plane,
    verify_plane_homaloidal,
)
from .poly import BinaryForm, LinearChange, Poly, ProjectivePoint, vanishing_order_at
from .space import (
    BidegreeCertificate,
    Recipe,
    SpaceCremonaMap,
    assemble,
    forge,
    forge_with_recipe,
    plan_bidegree,
    sample_case_a,
    sample_case_b,
    verify_space_bidegree,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BidegreeCertificate",
    "BidegreeMismatch",
    "BinaryForm",
    "CommonComponent",
    "CremonaError",
    "CriterionViolation",
    "DEFAULT_PRIME",
    "DeclaredBasePoint",
    "DeJonquieresWitness",
    "ForgeExhausted",
    "GenericityExhausted",
    "GenericityFailure",
    "IntersectionReport",
    "LinearChange",
    "MalformedCertificate",
    "OutOfRange",
    "PlaneCremonaMap",
    "PointConfiguration",
    "Poly",
    "PrimeField",
    "ProjectivePoint",
    "Recipe",
    "SpaceCremonaMap",
    "assemble",
    "build_de_jonquieres",
    "curves_through",
    "forge",
    "forge_plane",
    "forge_with_recipe",
    "is_prime",
    "load_certificate",
    "plan_bidegree",
    "residual_intersection",
    "sample_case_a",
    "sample_case_b",
    "serialize_certificate",
    "verification_failures",
    "verify_certificate",
    "verify_plane_homaloidal",
    "verify_space_bidegree",
    "vanishing_order_at",
    "__version__",
]
