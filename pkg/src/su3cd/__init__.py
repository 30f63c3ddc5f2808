"""Exact construction and classification of the type C and D subgroups of SU(3)."""

from su3cd.classify import (
    GroupSpec,
    build_group,
    canonical_spec,
    check_presentation,
    enumerate_specs,
    factorize_spec,
    series_label,
    single_diagonal_generator,
    spec_isomorphic,
)
from su3cd.errors import GroupTooLargeError, InvalidSpecError, VerificationError
from su3cd.groups import FiniteMatrixGroup, brute_force_isomorphism, closure, fingerprint
from su3cd.monomial import MonomialMatrix
from su3cd.normalize import normalize

__all__ = [
    "FiniteMatrixGroup",
    "GroupSpec",
    "GroupTooLargeError",
    "InvalidSpecError",
    "MonomialMatrix",
    "VerificationError",
    "brute_force_isomorphism",
    "build_group",
    "canonical_spec",
    "check_presentation",
    "closure",
    "enumerate_specs",
    "factorize_spec",
    "fingerprint",
    "normalize",
    "series_label",
    "single_diagonal_generator",
    "spec_isomorphic",
]
